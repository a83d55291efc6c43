#!/usr/bin/env python3
"""Builds the bundled Ge'ez-script test corpus (corpus_200.jsonl).

Synthetic Amharic-like news snippets: SOV-ish sentences over a fixed word
pool, Ethiopic punctuation, titles drawn from the lead sentence so a copy
mechanism has signal. Deterministic; rerunning reproduces the file byte for
byte.
"""

import json
import random

SUBJECTS = [
    "መንግሥት", "ሕዝብ", "ሚኒስትሩ", "ፕሬዚዳንቱ", "ክልሉ", "ከተማው", "ባንኩ", "ቡድኑ",
    "ኮሚሽኑ", "ምክር", "ቤቱ", "ተማሪዎች", "ገበሬዎች", "ነዋሪዎች", "ወጣቶች", "ኩባንያው",
]
OBJECTS = [
    "ኢኮኖሚ", "ትምህርት", "ጤና", "ውሃ", "ገበያ", "ልማት", "ግብርና", "እርሻ", "መንገድ",
    "ድልድይ", "ባቡር", "ወደብ", "ኃይል", "ግድብ", "ወንዝ", "ደን", "አካባቢ", "ዋጋ",
    "ገንዘብ", "በጀት", "ታክስ", "ገቢ", "እድገት", "ንግድ", "ምርጫ", "ሰላም", "ስምምነት",
    "ስፖርት", "ጨዋታ", "ሆስፒታል", "በሽታ", "ዝናብ", "ድርቅ", "መብራት", "ስልክ",
]
VERBS = [
    "አስታወቀ", "ገለጸ", "አሳወቀ", "ጀመረ", "አጠናቀቀ", "አሻሻለ", "አፀደቀ", "መረመረ",
    "ደገፈ", "ተቃወመ", "አከበረ", "መረቀ", "ገመገመ", "አስፋፋ", "ቀነሰ", "ጨመረ",
]
MODIFIERS = [
    "አዲስ", "ትልቅ", "ትንሽ", "ጥሩ", "ዋና", "የተሻለ", "የቀድሞ", "የአገር", "የውጭ",
    "የክልል", "የከተማ", "የገጠር",
]
NUMBERS = ["አንድ", "ሁለት", "ሦስት", "አራት", "አምስት", "አሥር", "መቶ", "ሺህ", "ሚሊዮን"]
UNITS = ["ብር", "ዓመት", "ወር", "ቀን", "በመቶ", "ሄክታር", "ኪሎሜትር"]
TAILS = [
    ["ዛሬ"], ["ነገ"], ["በዚህ", "ሳምንት"], ["በያዝነው", "ዓመት"], ["በአዲስ", "አበባ"],
    ["በኢትዮጵያ"], ["በክልሉ"], ["በከተማው"], [],
]
# Low-frequency names; most fall under min-count and exercise the OOV path.
NAMES = [
    "አበበ", "አልማዝ", "ገብረማርያም", "ተስፋዬ", "ብርሃኑ", "ሙሉጌታ", "ወርቅነህ", "ደረጀ",
    "ሐረር", "ጎንደር", "ባህርዳር", "መቀሌ", "ጅማ", "ደሴ", "አዳማ", "ሀዋሳ", "ድሬዳዋ",
    "አክሱም", "ላሊበላ", "ጋምቤላ", "አሶሳ", "ሰመራ", "ወልዲያ", "ሻሸመኔ", "አርባምንጭ",
    "ደብረብርሃን", "ነቀምቴ", "ሚዛን", "ቦንጋ", "ጂግጂጋ",
]
SITES = [
    "addisadmassnews.com", "waltainfo.com", "fanabc.com", "ebc.et",
    "ethiopianreporter.com", "soccerethiopia.net", "goolgule.com",
]


def sentence(rng, name=None):
    toks = []
    if name is not None:
        toks.append(name)
    toks.append(rng.choice(SUBJECTS))
    if rng.random() < 0.6:
        toks.append(rng.choice(MODIFIERS))
    toks.append(rng.choice(OBJECTS))
    if rng.random() < 0.4:
        toks += [rng.choice(NUMBERS), rng.choice(UNITS)]
    toks += rng.choice(TAILS)
    toks.append(rng.choice(VERBS))
    punct = "።" if rng.random() < 0.9 else "፣"
    return toks, punct


def main():
    rng = random.Random(20240801)
    rows = []
    for i in range(200):
        name = rng.choice(NAMES) if rng.random() < 0.5 else None
        lead, lead_punct = sentence(rng, name)
        body = [(lead, lead_punct)]
        for _ in range(rng.randint(1, 3)):
            body.append(sentence(rng))
        article = " ".join(" ".join(toks) + " " + punct for toks, punct in body)
        words = [t for toks, _ in body for t in toks]
        title_len = rng.randint(5, 7)
        title = " ".join(words[:title_len])
        rows.append(
            {
                "article": article,
                "title": title,
                "source": "https://%s/news/%04d" % (rng.choice(SITES), i),
            }
        )
    with open("corpus_200.jsonl", "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
