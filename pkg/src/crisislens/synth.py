"""Deterministic synthetic tweet archives for tests, demos and benchmarks.

The generator mimics the structure the pipeline cares about: Spanish and
English messages around a landfall date, keyword and off-topic chatter,
hashtag co-occurrence with #PuertoRico, geotagged island accounts, a
mention/retweet network with a handful of hubs, and a topical side
community talking about Venezuela. Output depends only on ``seed``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from datetime import datetime, timedelta, timezone

START = datetime(2017, 9, 16, tzinfo=timezone.utc)
DAYS = 30

HUBS = {
    "nwssanjuan": "weather station",
    "ricardorossello": "politician",
    "elnuevodia": "news outlet",
    "primerahora": "news outlet",
    "telemundopr": "news outlet",
    "johnmmorales": "meteorologist",
    "chayanne": "musician",
    "residente": "musician",
    "fema": "agency",
    "cruzrojapr": "agency",
    "periodista_pr": "journalist",
}
VZLA_HUBS = ["vzla_hoy", "noticias_vzla"]

ES_HAPPY = ["amar", "beso", "feliz", "amor", "dios", "héroes", "niños", "méxico", "ayuda", "agua",
            "luz", "comida", "refugio", "esperanza", "gracias", "vida", "familia", "isla"]
ES_SAD = ["odiar", "guerra", "muerte", "muertos", "huracán", "terremoto", "destrucción", "miedo",
          "triste", "perdido", "inundación", "sin", "no"]
ES_FILL = ["de", "la", "el", "que", "en", "y", "puerto", "rico", "para", "con", "todos", "hoy"]
EN_HAPPY = ["joy", "love", "happy", "relief", "help", "power", "water", "food", "hope", "thanks",
            "god", "heroes", "family", "island"]
EN_SAD = ["terror", "death", "dead", "hurricane", "storm", "flood", "destruction", "fear", "sad",
          "no", "not", "don't", "without", "lost"]
EN_FILL = ["the", "of", "to", "and", "in", "puerto", "rico", "for", "with", "everyone", "today"]
OFF_TOPIC_ES = ["buenos días a todos", "qué partido tan bueno", "me gusta el café", "feliz cumpleaños amiga"]
OFF_TOPIC_EN = ["good morning everyone", "great game tonight", "coffee first", "happy birthday friend"]
HASHTAGS = ["puertorico", "huracanmaria", "hurricanemaria", "prstrong", "maria", "fema", "trump",
            "maga", "resist", "somosunavoz", "onevoice", "verificando19s", "mexico", "ayudapr"]
EMOJI = ["🙏", "💔", "🇵🇷", "😢", "❤️", "🌀"]


def _sentence(rng: random.Random, lang: str, day_index: int) -> str:
    happy, sad, fill = (ES_HAPPY, ES_SAD, ES_FILL) if lang == "es" else (EN_HAPPY, EN_SAD, EN_FILL)
    # the storm makes sad words likelier around landfall (day 4)
    sad_weight = 0.35 + 0.25 * max(0.0, 1.0 - abs(day_index - 4) / 6.0)
    words = []
    for _ in range(rng.randint(5, 14)):
        u = rng.random()
        if u < 0.45:
            words.append(rng.choice(fill))
        elif u < 0.45 + 0.55 * sad_weight:
            words.append(rng.choice(sad))
        else:
            words.append(rng.choice(happy))
    if rng.random() < 0.5:
        words.append("maría" if lang == "es" else "maria")
    if rng.random() < 0.15:
        words.append(rng.choice(EMOJI))
    text = " ".join(words)
    return text[0].upper() + text[1:] + rng.choice([".", "!", "", " …"])


def generate(n: int = 1000, seed: int = 0) -> list[dict]:
    rng = random.Random(seed)
    locals_ = [f"pr_user{i:03d}" for i in range(60)]
    diaspora = [f"user{i:04d}" for i in range(240)]
    vzla = [f"vzla_user{i:02d}" for i in range(30)]
    hubs = list(HUBS)
    originals: list[dict] = []
    out = []
    for i in range(n):
        day = min(int(rng.triangular(0, DAYS, 4)), DAYS - 1)
        ts = START + timedelta(days=day, seconds=rng.randrange(86400))
        lang = "es" if rng.random() < 0.55 else "en"
        if rng.random() < 0.05:
            lang = rng.choice(["pt", "fr", None])
        author_pool = rng.random()
        if author_pool < 0.08:
            author = rng.choice(vzla)
        elif author_pool < 0.35:
            author = rng.choice(locals_)
        elif author_pool < 0.40:
            author = rng.choice(hubs)
        else:
            author = rng.choice(diaspora)

        mentions: list[str] = []
        retweet_of = None
        if author.startswith("vzla_"):
            lang = "es"
            text = f"{rng.choice(['Venezuela', 'Vzla', 'Maduro'])} " + _sentence(rng, "es", day)
            mentions.append(rng.choice(VZLA_HUBS))
        elif rng.random() < 0.12:
            text = rng.choice(OFF_TOPIC_ES if lang == "es" else OFF_TOPIC_EN)
        else:
            text = _sentence(rng, "es" if lang != "en" else "en", day)
        if not author.startswith("vzla_"):
            u = rng.random()
            if u < 0.25 and originals:
                src = rng.choice(originals[-40:])
                if src["author"] != author:
                    retweet_of = src["author"]
                    text = f"RT @{src['author']}: {src['text']}"
            elif u < 0.60:
                weights = [8, 6, 5, 3, 3, 3, 2, 2, 2, 1, 1]
                target = rng.choices(hubs, weights=weights)[0]
                if target != author:
                    mentions.append(target)
                if rng.random() < 0.3:
                    mentions.append(rng.choice(locals_ + diaspora[:40]))
            if mentions and "@" not in text:
                text = " ".join(f"@{m}" for m in mentions) + " " + text
        tags: list[str] = []
        if rng.random() < 0.35:
            tags = rng.sample(HASHTAGS, rng.randint(1, 4))
            if rng.random() < 0.6 and "puertorico" not in tags:
                tags.append("puertorico")
            text = text + " " + " ".join("#" + t for t in tags)
        geo = None
        if author in locals_ and rng.random() < 0.3:
            geo = {"lat": round(rng.uniform(17.95, 18.45), 4), "lon": round(rng.uniform(-67.2, -65.7), 4)}
        elif rng.random() < 0.03:
            geo = {"lat": round(rng.uniform(25.0, 41.0), 4), "lon": round(rng.uniform(-100.0, -73.0), 4)}
        rec = {
            "id": str(900000000000000000 + i),
            "author": author,
            "text": text,
            "created_at": ts.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "entities": {"hashtags": tags, "mentions": mentions},
            "retweet_of": retweet_of,
            "geo": geo,
        }
        if lang is not None:
            rec["lang"] = lang
        out.append(rec)
        if retweet_of is None and not author.startswith("vzla_"):
            originals.append(rec)
    out.sort(key=lambda r: (r["created_at"], r["id"]))
    return out


def account_labels() -> dict[str, str]:
    return dict(HUBS)


def write_ndjson(records: list[dict], stream) -> None:
    for rec in records:
        stream.write(json.dumps(rec, ensure_ascii=False, separators=(",", ":")) + "\n")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Write a synthetic NDJSON tweet archive.")
    parser.add_argument("-n", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-o", "--output", default="-")
    args = parser.parse_args(argv)
    records = generate(args.n, args.seed)
    if args.output == "-":
        write_ndjson(records, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            write_ndjson(records, fh)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
