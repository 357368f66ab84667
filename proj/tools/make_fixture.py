#!/usr/bin/env python3
"""Regenerates the test fixtures under tests/data.

The output is fully determined by the seeds below; rerunning the script
produces identical files.
"""

import argparse
import datetime as dt
import json
import math
import pathlib
import random

WINDOW_START = dt.date(2020, 3, 1)
WINDOW_END = dt.date(2020, 8, 31)

PLACES = {
    "VIC": ["Melbourne, Victoria", "Geelong, Victoria", "Victoria, Australia", "Ballarat, Victoria"],
    "NSW": ["Sydney, New South Wales", "Newcastle, New South Wales", "New South Wales, Australia"],
    "QLD": ["Brisbane, Queensland", "Gold Coast, Queensland", "Sunshine Coast, Queensland"],
    "WA": ["Perth, Western Australia"],
    "SA": ["Adelaide, South Australia"],
    "ACT": ["Canberra, Australian Capital Territory"],
    "TAS": ["Hobart, Tasmania", "Tasmania, Australia"],
    "NT": ["Darwin, Northern Territory"],
}
REGION_WEIGHTS = {"VIC": 30, "NSW": 28, "QLD": 16, "WA": 8, "SA": 7, "ACT": 5, "TAS": 4, "NT": 2}

# Each theme has its own vocabulary plus at least one tracking term, so the
# records pass the collection filter and separate into topics.
THEMES = {
    "lockdown": {
        "words": ["lockdown", "curfew", "stage", "restrictions", "roadblock", "police", "fines",
                  "suburbs", "permits", "borders"],
        "hashtags": ["lockdown", "stayhome", "covid19vic"],
        "mentions": ["danielandrewsmp", "vicpolice"],
    },
    "masks": {
        "words": ["mask", "masks", "mandatory", "face", "shield", "cloth", "surgical", "shops",
                  "trains", "wearing"],
        "hashtags": ["wearamask", "masks4all", "covid19"],
        "mentions": ["healthgovau"],
    },
    "vaccine": {
        "words": ["vaccine", "trial", "oxford", "doses", "rollout", "researchers", "candidate",
                  "immunity", "phase", "deal"],
        "hashtags": ["vaccine", "covid19", "herdimmunity"],
        "mentions": ["gregHuntMP", "csiro"],
    },
    "testing": {
        "words": ["testing", "clinic", "queue", "swab", "results", "drive", "through", "negative",
                  "symptoms", "covid"],
        "hashtags": ["covid19", "gettested", "coronavirus"],
        "mentions": ["nswhealth", "vichealth"],
    },
    "hotel": {
        "words": ["hotel", "quarantine", "guards", "breach", "returned", "travellers", "inquiry",
                  "security", "contracts", "outbreak"],
        "hashtags": ["hotelquarantine", "quarantine"],
        "mentions": ["abcnews"],
    },
    "school": {
        "words": ["homeschool", "remote", "learning", "teachers", "kids", "classroom", "students",
                  "term", "parents", "pandemic"],
        "hashtags": ["homeschool", "homeschooling", "pandemic"],
        "mentions": ["educationvic"],
    },
}
THEME_WEIGHTS = {"lockdown": 22, "masks": 16, "vaccine": 14, "testing": 20, "hotel": 14, "school": 14}

POSITIVE = ["great", "love", "thankful", "proud", "hope", "safe", "brilliant", "relief", "heroes", "good"]
NEGATIVE = ["terrible", "angry", "scared", "worst", "disaster", "sad", "frustrated", "awful", "chaos", "fear"]
FILLER = ["today", "again", "everyone", "really", "just", "week", "news", "people", "still", "city"]
EMOJI = ["\U0001F637", "\U0001F64F", "\U0001F62D", "\U0001F44D", "❤️", "\U0001F9D1‍⚕️"]
SOURCES = ["Twitter for iPhone", "Twitter for Android", "Twitter Web App"]


def archival(rec_id, created, text, place, country="Australia", hashtags=None, mentions=None,
             author=1000):
    obj = {
        "id": str(rec_id),
        "created_at": created,
        "text": text,
        "author_id": str(author),
        "source": SOURCES[rec_id % len(SOURCES)],
        "geo": {"full_name": place, "country": country},
    }
    entities = {}
    if hashtags is not None:
        entities["hashtags"] = [{"tag": h} for h in hashtags]
    if mentions is not None:
        entities["mentions"] = [{"username": m} for m in mentions]
    if entities:
        obj["entities"] = entities
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def iso(day, seconds):
    t = dt.datetime.combine(day, dt.time()) + dt.timedelta(seconds=seconds)
    return t.strftime("%Y-%m-%dT%H:%M:%S.000Z")


def weighted(rng, table):
    keys = list(table)
    return rng.choices(keys, weights=[table[k] for k in keys])[0]


def testing_wave(day_index):
    # Two waves, the second (winter) one larger.
    a = math.exp(-((day_index - 25) / 12.0) ** 2)
    b = 2.0 * math.exp(-((day_index - 140) / 18.0) ** 2)
    return 0.3 + a + b


def corpus(out_dir):
    rng = random.Random(20200301)
    days = (WINDOW_END - WINDOW_START).days + 1
    lines = []
    next_id = 1250000000000000000
    per_day_testing = [0] * days

    n_matching = 455
    for i in range(n_matching):
        theme = weighted(rng, THEME_WEIGHTS)
        if theme == "testing":
            weights = [testing_wave(d) for d in range(days)]
            day_index = rng.choices(range(days), weights=weights)[0]
            per_day_testing[day_index] += 1
        else:
            day_index = rng.randrange(days)
        day = WINDOW_START + dt.timedelta(days=day_index)
        spec = THEMES[theme]
        words = rng.sample(spec["words"], 4)
        if spec["words"][0] not in words:
            words[0] = spec["words"][0]
        mood = rng.random()
        if mood < 0.4:
            words += rng.sample(NEGATIVE, 2)
        elif mood < 0.7:
            words += rng.sample(POSITIVE, 2)
        words += rng.sample(FILLER, 2)
        rng.shuffle(words)
        text = " ".join(words).capitalize()
        hashtags = rng.sample(spec["hashtags"], rng.randint(0, min(2, len(spec["hashtags"]))))
        mentions = rng.sample(spec["mentions"], rng.randint(0, 1))
        text += "".join(f" #{h}" for h in hashtags) + "".join(f" @{m}" for m in mentions)
        if rng.random() < 0.25:
            text += f" https://t.co/{rng.getrandbits(32):08x}"
        if rng.random() < 0.2:
            text += " " + rng.choice(EMOJI)
        if rng.random() < 0.1:
            text = text.replace(" ", " &amp; ", 1)
        region = weighted(rng, REGION_WEIGHTS)
        place = rng.choice(PLACES[region])
        if rng.random() < 0.05:
            place = "Australia"
        # Half the records carry entity arrays, the rest rely on text extraction.
        use_entities = rng.random() < 0.5
        lines.append(archival(next_id, iso(day, rng.randrange(86400)), text, place,
                              hashtags=hashtags if use_entities else None,
                              mentions=mentions if use_entities else None,
                              author=2000 + rng.randrange(300)))
        next_id += rng.randrange(1, 5000)

    # Records the filter rejects.
    rejects = [
        ("Lovely sunny afternoon at the beach", "Sydney, New South Wales", "Australia", 10),
        ("Pandemonium at the footy tonight", "Melbourne, Victoria", "Australia", 20),
        ("Lockdown rules relaxed across the region", "Auckland, New Zealand", "New Zealand", 30),
        ("Masks are mandatory on the metro", "London, England", "United Kingdom", 40),
        ("Coffee and a croissant to start the week", "Brisbane, Queensland", "Australia", 50),
        ("The vaccinate campaign posters are up", "Perth, Western Australia", "Australia", 60),
    ]
    for k in range(24):
        text, place, country, offset = rejects[k % len(rejects)]
        day = WINDOW_START + dt.timedelta(days=(offset + 7 * k) % days)
        lines.append(archival(next_id, iso(day, 3600 * (k % 24)), text, place, country))
        next_id += 17
    # Outside the window.
    for k in range(6):
        day = WINDOW_END + dt.timedelta(days=5 + k)
        lines.append(archival(next_id, iso(day, 7200), "Covid testing queue at the clinic",
                              "Melbourne, Victoria"))
        next_id += 13

    # Duplicates of earlier ids, malformed lines and a record without text.
    for k in range(8):
        lines.append(lines[k * 37])
    lines.append('{"id": "1", "created_at": "2020-03-02T00:00:00Z", "text": "covid"')
    lines.append("not json at all")
    lines.append('["an", "array"]')
    lines.append(json.dumps({"id": "2", "created_at": "2020-03-02T00:00:00Z",
                             "geo": {"full_name": "Hobart, Tasmania", "country": "Australia"}}))
    while len(lines) < 500:
        lines.append(archival(next_id, iso(WINDOW_START, 60), "Weather update for the weekend",
                              "Darwin, Northern Territory"))
        next_id += 3
    assert len(lines) == 500, len(lines)
    rng.shuffle(lines)
    (out_dir / "corpus_500.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")

    # Targets: cases follow testing volume two days later, deaths follow
    # cases about a week later. One negative correction in deaths.
    noise = random.Random(99)
    cases = []
    for d in range(days):
        lagged = per_day_testing[d - 2] if d >= 2 else 0
        cases.append(max(0, round(4 + 6 * lagged + 3 * testing_wave(d) + noise.gauss(0, 1.5))))
    deaths = []
    for d in range(days):
        lagged = cases[d - 7] if d >= 7 else 0
        deaths.append(max(0, round(0.08 * lagged + noise.gauss(0, 0.6))))
    deaths[100] = -2
    for name, values in (("cases", cases), ("deaths", deaths)):
        rows = ["date,value"]
        for d, v in enumerate(values):
            rows.append(f"{(WINDOW_START + dt.timedelta(days=d)).isoformat()},{v}")
        (out_dir / f"{name}.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")


def ingest_100(out_dir):
    rng = random.Random(100)
    lines = []
    for i in range(97):
        day = WINDOW_START + dt.timedelta(days=rng.randrange(60))
        lines.append(archival(5000 + i, iso(day, rng.randrange(86400)),
                              f"Record {i} about covid #stayhome @abcnews", "Hobart, Tasmania"))
    bad = ['{"id": "77", "text": "unterminated"', "garbage line", '{"id": [1], "created_at": '
           '"2020-03-01T00:00:00Z", "text": "wrong id type"}']
    for pos, line in zip((10, 50, 90), bad):
        lines.insert(pos, line)
    assert len(lines) == 100
    (out_dir / "ingest_100.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")


def filter_50(out_dir):
    """12 records pass terms, country and window; every other record fails
    exactly one clause."""
    passing = [
        ("The new vaccine rollout starts today", None),
        ("Stuck in lockdown again", None),
        ("Wear a mask on public transport please", None),
        ("Working from home with the kids", None),
        ("Long queue for covid-19 testing", None),
        ("Stay home everyone", ["stayhome"]),
        ("Hand sanitizer sold out at the chemist", None),
        ("Flatten the curve, Melbourne", None),
        ("Feeling fine", ["covid19"]),
        ("Coronavirus update from the premier", None),
        ("PPE shortages for nurses", None),
        ("Day 40 of self isolating", None),
    ]
    failing_terms = [
        "Pandemonium at the markets", "Beautiful morning for a run", "Fluffy clouds today",
        "Maskless and carefree", "Vaccinate your dog", "Quarantined data in the lab",
        "The coronavirusupdate channel", "Lunch with friends", "Viruses in textbooks",
        "Lockdowns elsewhere", "A quiet evening", "Pandemics in history books",
        "Covidsafe app launched", "Footy tonight",
    ]
    lines = []
    rid = 9000
    for text, tags in passing:
        lines.append(archival(rid, "2020-04-15T10:00:00Z", text, "Sydney, New South Wales",
                              hashtags=tags))
        rid += 1
    for text in failing_terms:
        lines.append(archival(rid, "2020-04-15T10:00:00Z", text, "Sydney, New South Wales"))
        rid += 1
    for k in range(12):
        lines.append(archival(rid, "2020-05-01T08:00:00Z", "Lockdown extended", "Auckland, New Zealand",
                              country="New Zealand"))
        rid += 1
    for created in ("2020-02-29T23:59:59Z", "2020-09-01T00:00:00Z", "2019-12-31T12:00:00Z",
                    "2021-01-01T00:00:00Z", "2020-02-01T00:00:00Z", "2020-09-15T00:00:00Z",
                    "2020-02-28T12:00:00Z", "2020-12-25T00:00:00Z", "2020-10-10T00:00:00Z",
                    "2020-11-11T00:00:00Z", "2020-01-15T00:00:00Z", "2020-09-30T23:00:00Z"):
        lines.append(archival(rid, created, "Covid cases rising", "Perth, Western Australia"))
        rid += 1
    assert len(lines) == 50, len(lines)
    (out_dir / "filter_50.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")


def netgraph_20(out_dir):
    """Hashtag relations: 31 entries over VIC, NSW, QLD, SA and 9 tokens."""
    records = [
        ("Melbourne, Victoria", ["lockdown", "lockdown", "covid19"]),
        ("Melbourne, Victoria", ["lockdown", "stayhome"]),
        ("Geelong, Victoria", ["covid19vic", "lockdown"]),
        ("Victoria, Australia", ["covid19", "masks4all"]),
        ("Sydney, New South Wales", ["covid19", "nswpol"]),
        ("Sydney, New South Wales", ["lockdown"]),
        ("Newcastle, New South Wales", ["covid19", "covid19", "stayhome"]),
        ("Sydney, New South Wales", ["nswpol", "covid19"]),
        ("Brisbane, Queensland", ["covid19", "qldborder"]),
        ("Gold Coast, Queensland", ["qldborder", "qldborder"]),
        ("Brisbane, Queensland", ["stayhome"]),
        ("Adelaide, South Australia", ["covid19", "sagov"]),
        ("Adelaide, South Australia", ["sagov"]),
        ("Australia", ["covid19", "lockdown"]),
        ("Australia", ["auspol"]),
        ("Somewhere Else", ["covid19"]),
        ("Melbourne, Victoria", ["melbourne", "lockdown"]),
        ("Sydney, New South Wales", ["covid19", "stayhome"]),
        ("Adelaide, South Australia", ["lockdown"]),
        ("Melbourne, Victoria", ["masks4all"]),
    ]
    lines = []
    entries = 0
    for i, (place, tags) in enumerate(records):
        mentions = ["abcnews"] if i % 3 == 0 else []
        text = "Update " + " ".join(f"#{t}" for t in tags) + "".join(f" @{m}" for m in mentions)
        lines.append(archival(7000 + i, f"2020-04-{1 + i:02d}T09:00:00Z", text, place,
                              hashtags=tags, mentions=mentions))
        if place not in ("Australia", "Somewhere Else"):
            entries += len(tags)
    assert entries == 31, entries
    (out_dir / "netgraph_20.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"))
    args = parser.parse_args()
    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus(out_dir)
    ingest_100(out_dir)
    filter_50(out_dir)
    netgraph_20(out_dir)


if __name__ == "__main__":
    main()
