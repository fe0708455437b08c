#!/usr/bin/env python3
"""Regenerates demo/raw/{twitter,reddit}.csv: a synthetic 200-record corpus of
cybersecurity posts (120 tweets, 80 Reddit posts) with the noise real
collections carry: URLs, handles, hashtags, ALL-CAPS, exclamation runs,
negations, duplicates, zero-like tweets, 'new' listings and posts outside
the collection window. Output is deterministic."""

import csv
import random
from pathlib import Path

rng = random.Random(20211027)

WINDOW_START = 1635292800  # 2021-10-27T00:00:00Z
WINDOW_END = 1635984000    # 2021-11-04T00:00:00Z (exclusive)

SUBJECTS = ["Microsoft", "Facebook", "Apple", "GitHub", "Node.js", "Chrome", "Google",
            "China", "the United States", "the United Kingdom", "Yubikey", "Reddit",
            "our SOC team", "the new patch", "this ransomware crew", "MFA", "the firewall"]
POSITIVE = ["great", "excellent", "awesome", "impressive", "reliable", "helpful", "solid",
            "effective", "wonderful", "brilliant", "secure", "safe"]
NEGATIVE = ["terrible", "dangerous", "awful", "broken", "useless", "scary", "harmful",
            "malicious", "vulnerable", "stolen", "toxic", "frustrating"]
NEUTRAL = ["published an advisory about", "released version 2.1 of", "discussed", "updated",
           "is reviewing", "documented", "announced changes to", "will audit"]
TOPICS = ["password managers", "zero trust", "phishing kits", "supply chain attacks",
          "patch tuesday", "bug bounty programs", "encryption", "privacy settings",
          "hardware keys", "threat intel feeds"]
URLS = ["https://t.co/Ab12Cd", "https://example.com/advisory", "http://bit.ly/3xYz",
        "https://github.com/org/repo/issues/7"]
HANDLES = ["@SwiftOnSecurity", "@troyhunt", "@CISAgov", "@briankrebs"]


def sentence(kind):
    subj = rng.choice(SUBJECTS)
    topic = rng.choice(TOPICS)
    if kind == "pos":
        word = rng.choice(POSITIVE)
        forms = [f"{subj} is {word} at {topic}",
                 f"really {word} work by {subj} on {topic}",
                 f"{topic} from {subj} looks {word.upper()}",
                 f"not bad at all, {subj} made {topic} {word}"]
    elif kind == "neg":
        word = rng.choice(NEGATIVE)
        forms = [f"{subj} is {word} when it comes to {topic}",
                 f"{topic} at {subj} feels {word}",
                 f"{subj} {topic} rollout was {word.upper()}",
                 f"I thought {topic} was good but {subj} is {word}"]
    elif kind == "neu":
        forms = [f"{subj} {rng.choice(NEUTRAL)} {topic}",
                 f"thread on {topic} and {subj}",
                 f"{subj} {rng.choice(NEUTRAL)} {topic} today"]
    else:  # mixed
        forms = [f"{subj} is {rng.choice(POSITIVE)} but {topic} is {rng.choice(NEGATIVE)}",
                 f"{rng.choice(NEGATIVE)} {topic}, {rng.choice(POSITIVE)} response from {subj}"]
    return rng.choice(forms)


def decorate(text, source):
    if rng.random() < 0.3:
        text += " " + rng.choice(URLS)
    if source == "twitter" and rng.random() < 0.25:
        text = rng.choice(HANDLES) + " " + text
    if source == "twitter" and rng.random() < 0.5:
        text += " #" + rng.choice(["cybersecurity", "infosec", "privacy", "computersecurity"])
    if rng.random() < 0.25:
        text += "!" * rng.randint(1, 5)
    return text


def make(source, count, sections):
    rows = []
    kinds = ["pos"] * 45 + ["neu"] * 30 + ["neg"] * 18 + ["mixed"] * 7
    for i in range(count):
        text = decorate(sentence(rng.choice(kinds)), source)
        if source == "reddit" and rng.random() < 0.35:
            text = "reddit " + text if rng.random() < 0.5 else text + " (crossposted from another reddit thread)"
        created = rng.randrange(WINDOW_START, WINDOW_END)
        row = {
            "id": f"{source[0]}{i + 1:04d}",
            "source": source,
            "section": rng.choice(sections),
            "created_utc": created,
            "text": text,
            "engagement": rng.randint(1, 400),
            "listing": rng.choice(["top", "hot"]) if source == "reddit" else "",
        }
        rows.append(row)
    return rows


def inject_noise(rows, source):
    # duplicates: copy text of an earlier record
    for k in range(4):
        rows[20 + k * 11]["text"] = rows[3 + k]["text"]
    # out-of-window
    rows[-1]["created_utc"] = WINDOW_START - 3600
    rows[-2]["created_utc"] = WINDOW_END
    if source == "twitter":
        for k in (5, 17, 44, 71):
            rows[k]["engagement"] = 0
    else:
        for k in (9, 33, 58):
            rows[k]["listing"] = "new"


def write(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=["id", "source", "section", "created_utc", "text", "engagement", "listing"],
                           lineterminator="\r\n")
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    out = Path(__file__).resolve().parent / "raw"
    out.mkdir(exist_ok=True)
    tw = make("twitter", 120, ["cybersecurity", "computersecurity", "privacy"])
    rd = make("reddit", 80, ["cybersecurity", "computersecurity", "privacy"])
    inject_noise(tw, "twitter")
    inject_noise(rd, "reddit")
    write(out / "twitter.csv", tw)
    write(out / "reddit.csv", rd)
