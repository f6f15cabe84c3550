#!/usr/bin/env python3
"""Regenerates data/corpus.jsonl, the deterministic corpus behind the simulated engines.

Usage: python3 tools/gen_corpus.py > data/corpus.jsonl
"""
import json
import random

SEED = 20240611

CATEGORIES = {
    "finance": {
        "count": 32,
        "sites": ["moneywise", "bankingtoday", "ledgerpost", "fintimes"],
        "titles": [
            "How a bank works as a financial institution",
            "Choosing a bank account",
            "Central bank interest rates explained",
            "Bank loans and mortgages",
            "Savings deposit at your local bank",
            "Investment bank or retail bank",
            "Financial institution regulation",
            "Online banking security",
        ],
        "sentences": [
            "A bank is a financial institution that accepts deposits and makes loans.",
            "The bank pays interest on every savings deposit held in the account.",
            "Regulators supervise each financial institution to protect customers.",
            "Commercial bank branches offer checking accounts, credit cards and mortgages.",
            "The central bank sets the interest rate that other banks follow.",
            "Borrowers repay the loan with interest over an agreed period.",
            "Every financial institution must keep capital reserves against losses.",
            "Online banking lets customers transfer money and pay bills.",
            "Investment banks underwrite bonds and advise on mergers.",
            "Deposit insurance protects money placed in a bank account.",
            "Credit unions are member owned financial institutions.",
            "Banknote printing is managed by the national bank.",
        ],
    },
    "nature": {
        "count": 28,
        "sites": ["riverwatch", "wildshores", "naturejournal", "wetlands"],
        "titles": [
            "Walking the river bank",
            "Erosion along the river bank",
            "Birds of the lake shore",
            "Life on the banks of a water body",
            "Restoring a stream bank",
            "Fishing from the bank of a river",
            "Wetland plants along the water",
        ],
        "sentences": [
            "The river bank is the land along the sides of a water body.",
            "Willow trees hold the soil of the bank and slow erosion.",
            "Herons wade near the shore where the water is shallow.",
            "Floods carry sediment and leave a deposit on the river bank.",
            "Anglers fish for bass from the grassy bank of the lake.",
            "The current of the river cuts into the outer bank of each bend.",
            "Reeds and rushes grow on both sides of the water body.",
            "Otters build dens in the steep bank above the stream.",
            "A spring feeds the pond with cold clean water.",
            "Restoration crews plant native shrubs to protect the stream bank.",
        ],
    },
    "society": {
        "count": 24,
        "sites": ["dailylife", "trustmatters", "communityvoice"],
        "titles": [
            "People you can bank on",
            "Whom do we rely upon",
            "Trust in neighbours",
            "Bank on yourself",
            "Relying upon family in hard times",
            "Building reliable communities",
        ],
        "sentences": [
            "You can bank on good friends when times are hard.",
            "Children rely upon parents for care and guidance.",
            "Communities rely upon volunteers to run local events.",
            "To bank on someone means to rely upon them completely.",
            "Trust grows when people keep the promises others rely upon.",
            "Neighbours depend on each other and rely upon shared help.",
            "Many families bank on grandparents for childcare.",
            "Reliable public services are something citizens rely upon.",
        ],
    },
    "technology": {
        "count": 28,
        "sites": ["techradar", "gadgetlab", "devicereview", "codehub"],
        "titles": [
            "Best typing keyboard for programmers",
            "Mechanical keyboard switches compared",
            "Wireless keyboard and mouse combos",
            "Ergonomic keyboard device guide",
            "Laptop keyboard repair",
            "Bangalore technology startups",
            "Python and Java for beginners",
        ],
        "sentences": [
            "A typing keyboard is an input device with keys for letters and numbers.",
            "Mechanical switches give each key a tactile click while typing.",
            "The wireless keyboard pairs with a computer mouse over bluetooth.",
            "An ergonomic keyboard device reduces strain during long typing sessions.",
            "Laptop keyboard keys can be replaced when a switch fails.",
            "Bangalore hosts many software companies and technology startups.",
            "Programmers often learn Python or Java as a first language.",
            "Keyboard shortcuts speed up typing and editing text.",
            "The computer mouse is a pointing device next to the keyboard.",
            "Touch typing trains each finger to reach its own keys.",
        ],
    },
    "music": {
        "count": 32,
        "sites": ["musicworld", "pianoguild", "synthforum", "melodymag"],
        "titles": [
            "Learning the piano keyboard",
            "Choosing a digital keyboard instrument",
            "Synthesizer keyboards for musicians",
            "The pipe organ and other keyboard instruments",
            "Sachin Dev Burman music director",
            "Scales and keys on the keyboard",
            "Playing bass with a band",
            "Classic rock records",
        ],
        "sentences": [
            "The keyboard is a musical instrument with keys played by pressing.",
            "A digital keyboard instrument can sound like a piano, organ or strings.",
            "Musicians practise scales in every key on the piano keyboard.",
            "Sachin Dev Burman was a celebrated music director of Hindi film songs.",
            "The synthesizer keyboard shapes sound with oscillators and filters.",
            "The pipe organ is the largest keyboard instrument with many pipes.",
            "Each note on the keyboard has its own pitch.",
            "The bass player locks in with the drummer in a rock band.",
            "Vinyl records of classic rock music are collected by fans.",
            "Music teachers start students with simple melodies on the keys.",
            "Songs composed by Sachin Dev Burman remain popular today.",
        ],
    },
    "sports": {
        "count": 28,
        "sites": ["cricketnews", "sportsdesk", "scoreboard"],
        "titles": [
            "Sachin Tendulkar batting records",
            "Cricket world cup highlights",
            "How to hold a cricket bat",
            "The best pitch for test cricket",
            "Tennis court surfaces",
            "Famous football matches",
        ],
        "sentences": [
            "Sachin Tendulkar scored more international runs than any other cricket player.",
            "The cricket bat is made of willow and strikes the ball.",
            "Bowlers pitch the ball on a dry pitch to get spin.",
            "Sachin Tendulkar holds the record for most test centuries.",
            "Fans filled the stadium for the world cup cricket match.",
            "Tennis players slide on the clay court during long rallies.",
            "The football match ended with a late winning goal.",
            "Sachin made his debut for India at sixteen years of age.",
            "The team practised batting and fielding before the final match.",
        ],
    },
    "geography": {
        "count": 28,
        "sites": ["worldatlas", "citytravel", "indiaguide"],
        "titles": [
            "Where is Bangalore",
            "Bangalore city guide",
            "Karnataka travel and Bangalore",
            "Rivers of India",
            "Island of Java geography",
            "Lakes and parks of Bangalore",
        ],
        "sentences": [
            "Bangalore is the capital city of the state of Karnataka in southern India.",
            "Bangalore sits on the Deccan plateau at about nine hundred metres.",
            "The city of Bangalore is known for gardens, lakes and a mild climate.",
            "The Kaveri river flows through Karnataka toward the Bay of Bengal.",
            "Java is an island in Indonesia with many volcanoes.",
            "Travellers visit Lalbagh and Cubbon Park in Bangalore.",
            "Major rivers of India include the Ganges, the Godavari and the Kaveri.",
            "Bangalore is also called Bengaluru by its residents.",
        ],
    },
}


def slugify(text):
    out = []
    for ch in text.lower():
        out.append(ch if ch.isalnum() else "-")
    slug = "".join(out)
    while "--" in slug:
        slug = slug.replace("--", "-")
    return slug.strip("-")


def url_for(rng, site, category, slug, n):
    base = f"https://www.{site}.example/{category}/{slug}-{n}"
    style = rng.randrange(6)
    if style == 0:
        return base.replace(f"www.{site}.example", f"WWW.{site.capitalize()}.example")
    if style == 1:
        return base + "/"
    if style == 2:
        return base.replace(".example/", ".example:443/")
    if style == 3:
        return base + "#top"
    return base


def main():
    rng = random.Random(SEED)
    doc_no = 0
    for category, profile in CATEGORIES.items():
        for i in range(profile["count"]):
            doc_no += 1
            title = profile["titles"][i % len(profile["titles"])]
            n_sent = rng.randint(3, 6)
            body = " ".join(rng.sample(profile["sentences"], n_sent))
            site = profile["sites"][rng.randrange(len(profile["sites"]))]
            doc = {
                "doc_id": f"doc-{doc_no:04d}",
                "url": url_for(rng, site, category, slugify(title), i + 1),
                "title": title,
                "body": body,
                "category": category,
            }
            print(json.dumps(doc, ensure_ascii=False))


if __name__ == "__main__":
    main()
