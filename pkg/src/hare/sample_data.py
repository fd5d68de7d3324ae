"""Bundled sample corpus: deterministic synthetic articles plus curated ones.

The synthetic articles mix 3-5 topics each, with sentences generated from
per-topic vocabularies over shared templates, so sentence vectors cluster
into recognizable concepts the way real news articles do.  Article lengths
span 10-40 sentences with extra mass at the short end (for exhaustive
subset checks) and at 34-40 (for throughput measurements).

``build_sample_corpus`` regenerates the corpus from a seed;
``load_sample_corpus`` reads the committed copy shipped with the package.
"""

from __future__ import annotations

import importlib.resources
from pathlib import Path

import numpy as np

from .corpus import Corpus, Document, load_corpus, make_document, save_corpus

_TOPICS: dict[str, dict[str, list[str]]] = {
    "politics": {
        "actor": ["the senator", "the mayor", "the committee", "the opposition party",
                  "the governor", "parliament", "the city council", "the minister"],
        "verb": ["approved", "debated", "rejected", "postponed", "amended",
                 "endorsed", "vetoed", "negotiated"],
        "object": ["the budget proposal", "the housing bill", "the tax reform",
                   "a new ordinance", "the infrastructure plan", "the election schedule",
                   "the zoning measure", "a spending cap"],
        "context": ["after weeks of debate", "despite public protest", "in a narrow vote",
                    "before the recess", "under media scrutiny", "at the midnight session"],
    },
    "sports": {
        "actor": ["the striker", "the home team", "the goalkeeper", "the head coach",
                  "the defending champions", "the rookie", "the visiting side", "the captain"],
        "verb": ["scored", "defended", "trained", "conceded", "celebrated",
                 "equalized", "sprinted", "rallied"],
        "object": ["a late goal", "the penalty kick", "the league title", "a crucial match",
                   "the opening set", "a season record", "the final lap", "the derby"],
        "context": ["in extra time", "before a sold-out crowd", "on a muddy pitch",
                    "during the playoffs", "after a lengthy injury", "in stoppage time"],
    },
    "science": {
        "actor": ["the research team", "the astronomers", "the laboratory", "the biologists",
                  "the survey", "the physicists", "the observatory", "the geneticists"],
        "verb": ["measured", "detected", "published", "replicated", "sequenced",
                 "modeled", "catalogued", "confirmed"],
        "object": ["a faint signal", "the cell samples", "the fossil record",
                   "a distant exoplanet", "the particle decay", "the coral genome",
                   "an unexpected pattern", "the telescope data"],
        "context": ["in a peer-reviewed study", "after months of analysis",
                    "with new instruments", "at the polar station", "under controlled conditions",
                    "across repeated trials"],
    },
    "finance": {
        "actor": ["the central bank", "investors", "the startup", "the exchange",
                  "the retail chain", "analysts", "the fund", "the regulator"],
        "verb": ["raised", "downgraded", "forecast", "reported", "audited",
                 "merged with", "priced", "hedged"],
        "object": ["quarterly earnings", "the interest rate", "a funding round",
                   "the bond issue", "its growth outlook", "the commodity index",
                   "the merger deal", "its loan book"],
        "context": ["amid market volatility", "after the earnings call", "in early trading",
                    "despite inflation fears", "over the fiscal year", "following the audit"],
    },
    "weather": {
        "actor": ["the storm front", "forecasters", "the heat wave", "emergency crews",
                  "the river", "the cold snap", "meteorologists", "the coastal towns"],
        "verb": ["flooded", "warned", "tracked", "evacuated", "battered",
                 "drenched", "scorched", "swelled"],
        "object": ["the low-lying districts", "the northern valleys", "the power grid",
                   "the harvest", "the coastline", "commuter routes", "the reservoirs",
                   "the mountain passes"],
        "context": ["over the weekend", "for the third day", "as pressure dropped",
                    "before dawn", "through the holiday", "despite earlier forecasts"],
    },
    "technology": {
        "actor": ["the chipmaker", "engineers", "the software vendor", "the data center",
                  "the robotics firm", "developers", "the standards body", "the platform"],
        "verb": ["launched", "patched", "deprecated", "benchmarked", "open-sourced",
                 "scaled", "refactored", "certified"],
        "object": ["the new processor", "a security flaw", "the mobile app",
                   "its cloud service", "the battery design", "an update",
                   "the compression codec", "the assembly line"],
        "context": ["ahead of the conference", "after user complaints", "in a blog post",
                    "under embargo", "with record demand", "during the rollout"],
    },
    "health": {
        "actor": ["the clinic", "health officials", "the trial", "nurses",
                  "the hospital network", "the vaccination drive", "researchers", "pharmacists"],
        "verb": ["screened", "treated", "recommended", "enrolled", "monitored",
                 "immunized", "diagnosed", "discharged"],
        "object": ["the new patients", "a booster dose", "the outbreak",
                   "the recovery ward", "a dietary guideline", "the waiting list",
                   "the therapy protocol", "blood samples"],
        "context": ["within two weeks", "at reduced cost", "per the guidance",
                    "across rural districts", "after the review", "without major side effects"],
    },
    "culture": {
        "actor": ["the museum", "the orchestra", "the film festival", "the novelist",
                  "the gallery", "the theater troupe", "the curator", "the choir"],
        "verb": ["unveiled", "premiered", "restored", "commissioned", "toured",
                 "adapted", "archived", "performed"],
        "object": ["a retrospective", "the lost manuscript", "the mural",
                   "a chamber piece", "the documentary", "an outdoor stage",
                   "the folk collection", "a debut novel"],
        "context": ["to critical acclaim", "after a long restoration", "for the anniversary",
                    "with community funding", "in the old quarter", "despite the rain"],
    },
    "travel": {
        "actor": ["the airline", "the ferry operator", "tour guides", "the railway",
                  "the border agency", "hoteliers", "the cruise line", "backpackers"],
        "verb": ["rerouted", "booked", "delayed", "expanded", "discounted",
                 "inspected", "upgraded", "crowded"],
        "object": ["the island route", "the overnight train", "the mountain trail",
                   "peak-season fares", "the terminal", "the visa process",
                   "the heritage walk", "the coastal road"],
        "context": ["for the summer season", "after the strike", "citing fuel costs",
                    "to meet demand", "during the festival", "with little notice"],
    },
    "wildlife": {
        "actor": ["the rangers", "the wolf pack", "conservationists", "the herd",
                  "the nesting colony", "volunteers", "the sanctuary", "the migratory flock"],
        "verb": ["tagged", "released", "counted", "protected", "photographed",
                 "relocated", "tracked", "fed"],
        "object": ["the cubs", "a rare orchid", "the wetland", "the salmon run",
                   "the old-growth grove", "an injured eagle", "the reef survey",
                   "the grassland corridor"],
        "context": ["before the dry season", "under a new permit", "with drone support",
                    "at first light", "along the ridge", "for the annual census"],
    },
    "food": {
        "actor": ["the bakery", "the night market", "the vineyard", "local farmers",
                  "the head chef", "the cooperative", "the cannery", "food inspectors"],
        "verb": ["harvested", "fermented", "served", "recalled", "sourced",
                 "graded", "roasted", "bottled"],
        "object": ["the autumn vintage", "a tasting menu", "the olive crop",
                   "the street stalls", "a heritage grain", "the cheese wheels",
                   "the morning catch", "the spice blend"],
        "context": ["at the weekend fair", "after a record yield", "for export",
                    "under the new label", "in small batches", "by hand"],
    },
    "education": {
        "actor": ["the school board", "teachers", "the university", "the literacy program",
                  "graduate students", "the academy", "the tutoring center", "the faculty"],
        "verb": ["enrolled", "graded", "piloted", "accredited", "revised",
                 "funded", "examined", "mentored"],
        "object": ["the new curriculum", "the scholarship fund", "evening classes",
                   "the entrance exam", "a coding workshop", "the library wing",
                   "the exchange program", "remedial courses"],
        "context": ["this semester", "after parent feedback", "with state support",
                    "despite budget cuts", "across three campuses", "for the first time"],
    },
}

_TEMPLATES = [
    "{Actor} {verb} {object} {context}.",
    "{Actor} {verb} {object}.",
    "According to the report, {actor} {verb} {object} {context}.",
    "Witnesses said {actor} {verb} {object}.",
    "Officials confirmed that {actor} {verb} {object} {context}.",
    "Earlier, {actor} had {verb} {object}.",
    "{Actor} then {verb} {object}, {context}.",
    "By Tuesday, {actor} {verb} {object}.",
    "Sources added that {actor} {verb} {object} {context}.",
    "Meanwhile, {actor} {verb} {object}.",
]

# hand-written articles to keep the corpus from being purely formulaic
_CURATED: list[tuple[str, str]] = [
    (
        "curated-council-bridge",
        "The city council met on Monday to decide the fate of the aging Harbor Street "
        "bridge. Engineers had warned for years that the span was nearing the end of its "
        "safe life. A consultant's report put the cost of a full replacement at ninety "
        "million dollars. Opponents of the plan argued that a repair program would cost "
        "half as much. Local businesses worried about losing foot traffic during a long "
        "closure. The transit authority asked for a dedicated bus lane on any new "
        "structure. Cyclists packed the gallery to demand a protected path across the "
        "water. After four hours of testimony the council voted seven to two for "
        "replacement. Construction is expected to begin next spring and last three years. "
        "A temporary ferry will carry commuters while the bridge is closed. The mayor "
        "called the vote the most consequential of her term. Funding will come from a "
        "mix of state grants and a modest toll.",
    ),
    (
        "curated-cup-final",
        "The cup final began under heavy rain in front of sixty thousand fans. Rovers "
        "took the lead in the ninth minute with a header from a corner. United pressed "
        "for an equalizer but found the goalkeeper in inspired form. Just before the "
        "break a penalty was awarded after a clumsy challenge. The spot kick clipped the "
        "bar and stayed out, to the crowd's disbelief. The second half slowed as the "
        "pitch turned to mud. United's young winger finally leveled the match with a "
        "solo run in the seventy-eighth minute. Extra time produced chances at both ends "
        "but no goals. The shootout went to nine rounds before a save decided it. Rovers "
        "lifted the trophy for the first time in forty years. Their captain dedicated "
        "the win to the club's longtime groundskeeper. Celebrations in the old town "
        "lasted well past midnight.",
    ),
    (
        "curated-exoplanet",
        "Astronomers have confirmed a rocky planet orbiting a quiet red dwarf forty "
        "light years away. The world completes an orbit every eleven days. Its mass is "
        "roughly one and a half times that of Earth. Transit measurements suggest a thin "
        "atmosphere or none at all. The discovery team combined data from two space "
        "telescopes and a ground array. Follow-up spectroscopy is scheduled for the "
        "coming winter. The star's calm surface makes the system a rare laboratory for "
        "atmospheric studies. Earlier candidates around similar stars turned out to be "
        "instrument noise. The team spent two years ruling out such artifacts. Models "
        "place the planet at the inner edge of the habitable zone. Liquid water is "
        "unlikely but not impossible under a dense cloud layer. A companion planet "
        "further out remains unconfirmed. The results appear in this week's issue of a "
        "major journal.",
    ),
    (
        "curated-heat-wave",
        "A record heat wave settled over the region for a sixth consecutive day. "
        "Temperatures reached forty-two degrees in the shade by early afternoon. The "
        "power grid strained under the load of millions of air conditioners. Rolling "
        "outages were reported in three suburbs. Cooling centers opened in libraries and "
        "school gyms. Hospitals logged a sharp rise in heat exhaustion cases. Outdoor "
        "work was ordered to stop between noon and four. Farmers rushed to irrigate "
        "orchards before water restrictions tightened. The reservoir fell to its lowest "
        "level in two decades. Meteorologists traced the pattern to a stalled ridge of "
        "high pressure. Relief is expected when a coastal front arrives on Friday. "
        "Officials urged residents to check on elderly neighbors twice a day.",
    ),
    (
        "curated-seed-round",
        "A local battery startup closed a thirty million dollar funding round on "
        "Thursday. The company builds grid-scale storage from recycled electric vehicle "
        "cells. Its pilot site has run for a year beside a wind farm upstate. The new "
        "capital will fund a second assembly line and forty hires. Investors were drawn "
        "by the firm's unusually low refurbishment costs. Each pack is tested against "
        "fire standards stricter than the industry norm. Competitors rely on new cells "
        "and imported enclosures. The chief executive said the order book is full "
        "through next autumn. A utility partnership will deploy units across twelve "
        "substations. Regulators recently cleared the design for dense urban sites. The "
        "round was led by a climate-focused fund with two smaller backers. An earlier "
        "prototype failed in 2021, a setback the team credits for the current design.",
    ),
    (
        "curated-museum-wing",
        "The maritime museum opened its long-delayed east wing to the public on "
        "Saturday. The expansion houses a restored nineteenth-century fishing schooner. "
        "Visitors can walk the deck and descend into the cramped crew quarters. A new "
        "gallery traces the harbor's rise from a muddy landing to a trading hub. "
        "Interactive charts let children plot a course through the old shipping lanes. "
        "Conservators spent five years replacing the schooner's rotten planking. Nearly "
        "all the original hardware was saved and refitted. The project ran two years "
        "late after structural problems in the seawall. Admission stays free on weekday "
        "mornings for school groups. The director hopes the wing will double annual "
        "attendance. A cafe on the upper floor overlooks the working docks. Night tours "
        "begin next month, lit by replica oil lamps.",
    ),
    (
        "curated-ridge-fire",
        "A wildfire on the northern ridge grew to eight thousand hectares overnight. "
        "Crews cut containment lines along the eastern flank before winds shifted. Two "
        "hamlets were evacuated as a precaution in the early hours. The fire jumped a "
        "forest road and threatened a communications tower. Water bombers flew rotations "
        "from the lake through the afternoon. No injuries have been reported so far. "
        "Investigators suspect a lightning strike from Tuesday's dry storm. Smoke closed "
        "the highway and grounded small aircraft in the valley. Ranchers moved cattle to "
        "pastures south of the river. Cooler air and light rain are forecast for the "
        "weekend. Officials said containment stood at twenty percent by evening. The "
        "burned slopes will need replanting to prevent spring mudslides.",
    ),
    (
        "curated-marathon",
        "The island marathon drew a record field of twelve thousand runners. The course "
        "climbs from the ferry terminal to a lighthouse and back. Morning fog kept "
        "temperatures ideal through the first half. The defending champion dropped out "
        "at the twentieth kilometer with a cramp. A schoolteacher from the mainland took "
        "the lead on the final descent. She crossed the line in two hours and "
        "twenty-nine minutes, a course record. The men's race came down to a sprint "
        "between two training partners. Volunteers handed out four hundred thousand cups "
        "of water. Islanders lined the seawall with drums and homemade signs. A gust "
        "blew the finish banner into the harbor minutes before the winner arrived. "
        "Organizers confirmed the race will return next year with a wheelchair "
        "division. Entries open in January and usually sell out within a week.",
    ),
]


def _synth_sentence(rng: np.random.Generator, topic: str) -> str:
    vocab = _TOPICS[topic]
    template = _TEMPLATES[int(rng.integers(len(_TEMPLATES)))]
    actor = vocab["actor"][int(rng.integers(len(vocab["actor"])))]
    verb = vocab["verb"][int(rng.integers(len(vocab["verb"])))]
    obj = vocab["object"][int(rng.integers(len(vocab["object"])))]
    context = vocab["context"][int(rng.integers(len(vocab["context"])))]
    sentence = template.format(
        Actor=actor.capitalize(), actor=actor, verb=verb, object=obj, context=context
    )
    return sentence


def _synth_article(rng: np.random.Generator, doc_id: str) -> Document:
    topic_names = list(_TOPICS)
    n_topics = int(rng.integers(3, 6))
    picked = [topic_names[i] for i in rng.choice(len(topic_names), n_topics, replace=False)]
    # length mixture: short articles for exhaustive checks, long ones for
    # throughput runs, a broad middle otherwise
    roll = rng.random()
    if roll < 0.18:
        length = int(rng.integers(10, 13))
    elif roll < 0.30:
        length = int(rng.integers(34, 41))
    else:
        length = int(rng.integers(13, 34))
    # uneven topic emphasis per article
    emphasis = 1.0 - rng.random(n_topics)
    emphasis = emphasis / emphasis.sum()
    # articles are built from contiguous 2-5 sentence segments on one topic,
    # the way news prose groups a theme into a paragraph before moving on
    texts: list[str] = []
    while len(texts) < length:
        topic = picked[int(rng.choice(n_topics, p=emphasis))]
        segment = min(int(rng.integers(2, 6)), length - len(texts))
        for _ in range(segment):
            texts.append(_synth_sentence(rng, topic))
    return make_document(doc_id, texts)


def build_sample_corpus(n_synthetic: int = 392, seed: int = 1205) -> Corpus:
    """Regenerate the bundled corpus; deterministic for a given seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    documents = [make_document(doc_id, split_texts) for doc_id, split_texts in _curated_split()]
    for i in range(n_synthetic):
        documents.append(_synth_article(rng, f"sample-{i:04d}"))
    return Corpus(tuple(documents), provenance=f"bundled sample corpus (seed={seed})")


def _curated_split() -> list[tuple[str, list[str]]]:
    from .corpus import split_sentences

    out = []
    for doc_id, text in _CURATED:
        out.append((doc_id, [s.text for s in split_sentences(text)]))
    return out


def sample_corpus_path() -> Path:
    return Path(str(importlib.resources.files("hare").joinpath("data/sample_corpus.jsonl")))


def load_sample_corpus(min_sentences: int = 10) -> Corpus:
    """Load the committed sample corpus shipped with the package."""
    return load_corpus(sample_corpus_path(), min_sentences=min_sentences)


def write_sample_corpus(path: str | Path | None = None) -> Path:
    """Write the generated corpus to ``path`` (default: the packaged file)."""
    target = Path(path) if path is not None else sample_corpus_path()
    target.parent.mkdir(parents=True, exist_ok=True)
    save_corpus(build_sample_corpus(), target)
    return target
