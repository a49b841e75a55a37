#!/usr/bin/env python3
"""Generate data/seed_db.json, the synthetic benchmark database.

The records are synthetic. Two feature counts are pinned so that a weight
refresh reproduces the published values:

  Preference   84 functions, 45 suitable  -> 53.6
  DataStorage  92 functions, 75 suitable  -> 81.5

Every other count falls out of a seeded RNG. Output is deterministic.
"""

import argparse
import json
import random

DOMAINS = [
    ("online chat", ["message", "contact", "group chat", "voice call", "sticker", "chat history"]),
    ("news", ["headline", "article", "comment", "subscription", "topic", "breaking alert"]),
    ("browser", ["bookmark", "tab", "history", "download", "extension", "page"]),
    ("map", ["route", "place", "traffic", "offline map", "navigation", "marker"]),
    ("cloud notes", ["note", "notebook", "tag", "attachment", "shared note", "reminder"]),
    ("music", ["playlist", "track", "album", "lyrics", "radio station", "artist"]),
    ("video", ["video", "channel", "danmaku", "watch history", "live stream", "subtitle"]),
    ("online shopping", ["order", "cart", "product", "coupon", "review", "payment"]),
    ("email", ["mail", "mailbox", "draft", "attachment", "spam filter", "signature"]),
    ("social network", ["post", "follower", "feed", "like", "profile", "direct message"]),
    ("weather", ["forecast", "city", "alert", "air quality", "radar image", "widget"]),
    ("ride hailing", ["trip", "driver", "fare", "pickup point", "rating", "invoice"]),
    ("online education", ["course", "lesson", "quiz", "assignment", "certificate", "live class"]),
    ("photo editing", ["photo", "filter", "album", "collage", "template", "export preset"]),
]

VERBS = ["View", "Create", "Update", "Delete", "Search", "Sync", "Share", "List", "Sort", "Recommend"]

# (probability when suitable, probability when unsuitable)
FREE_FEATURES = {
    "Calculation": (0.30, 0.20),
    "Recommendation": (0.20, 0.15),
    "InformationTransmission": (0.50, 0.25),
    "DataSynchronization": (0.25, 0.10),
    "Search": (0.30, 0.20),
    "Timeliness": (0.35, 0.15),
    "Extension": (0.10, 0.05),
    "ThirdPartyIntegration": (0.15, 0.10),
    "UserInterface": (0.10, 0.45),
}

PINNED = {
    "Preference": (45, 39),   # suitable, unsuitable
    "DataStorage": (75, 17),
}

TOTAL = 230
SUITABLE = 140


def generate(seed: int) -> dict:
    rng = random.Random(seed)
    per_domain = [17] * 6 + [16] * 8
    assert sum(per_domain) == TOTAL

    labels = [True] * SUITABLE + [False] * (TOTAL - SUITABLE)
    rng.shuffle(labels)
    suitable_idx = [i for i, s in enumerate(labels) if s]
    unsuitable_idx = [i for i, s in enumerate(labels) if not s]

    features = [set() for _ in range(TOTAL)]
    for i, s in enumerate(labels):
        if s or rng.random() < 0.45:
            features[i].add("BackendRelated")
    for name, (n_suit, n_unsuit) in PINNED.items():
        for i in rng.sample(suitable_idx, n_suit) + rng.sample(unsuitable_idx, n_unsuit):
            features[i].add(name)
    for name, (p_suit, p_unsuit) in FREE_FEATURES.items():
        for i, s in enumerate(labels):
            if rng.random() < (p_suit if s else p_unsuit):
                features[i].add(name)
    for f in features:
        if not f:
            f.add("UserInterface")

    records = []
    i = 0
    for (domain, objects), count in zip(DOMAINS, per_domain):
        app = "sample " + domain + " app"
        names = [f"{v} {o}" for o in objects for v in VERBS]
        rng.shuffle(names)
        for name in names[:count]:
            records.append({
                "record_id": f"seed-{i + 1:04d}",
                "app_name": app,
                "app_domain": domain,
                "function_name": name,
                "features": sorted(features[i]),
                "suitable": labels[i],
            })
            i += 1
    return {"catalog_version_applied": 0, "records": records, "submissions": []}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=2020)
    parser.add_argument("--out", default="data/seed_db.json")
    args = parser.parse_args()
    db = generate(args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(db, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
