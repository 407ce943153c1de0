#!/usr/bin/env python3
"""Builds the bundled six-drug fixture corpus, annotations and configs.

The emitted files live under tests/data/fixture/. Every aggregate the test
suites assert (descriptive table cells, sentiment tallies, topic shares,
timeline milestones) is re-derived here by an independent pure-Python
implementation before anything is written; generation fails loudly if a
target is missed.
"""

import json
import sys
from collections import defaultdict
from datetime import date, timedelta
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "data" / "fixture"

COMMENT_TYPES = {"Comment", "Letter", "Editorial"}
PRIMARY_TYPES = {"Journal Article", "Clinical Trial", "Randomized Controlled Trial"}

JOURNALS = [
    "N Engl J Med", "Lancet", "BMJ", "JAMA", "J Infect",
    "Travel Med Infect Dis", "Proc Natl Acad Sci U S A", "Antiviral Res",
    "Chest", "J Med Virol",
]

EVIDENCE_TYPE_CYCLE = [
    ["Journal Article"],
    ["Journal Article", "Randomized Controlled Trial"],
    ["Journal Article"],
    ["Journal Article", "Clinical Trial"],
    ["Review"],
]
COMMENT_TYPE_CYCLE = [["Letter"], ["Comment"], ["Editorial"], ["Letter", "Comment"]]

LEXICON = {
    "corticosteroid": ["corticosteroid", "corticosteroids", "steroid", "steroids", "dexamethasone"],
    "remdesivir": ["remdesivir"],
    "HCQ": ["hydroxychloroquine"],
    "LPV/r": ["lopinavir", "ritonavir"],
    "ivermectin": ["ivermectin"],
    "IL-6 receptor blockers": ["tocilizumab", "sarilumab", "IL-6"],
}

GUIDELINES = [
    {"drug": "corticosteroid", "version": 1, "release_date": "2020-09-02", "polarity": "For",
     "note": "recommended for severe disease"},
    {"drug": "remdesivir", "version": 2, "release_date": "2020-11-20", "polarity": "Against",
     "note": "conditional recommendation against"},
    {"drug": "HCQ", "version": 3, "release_date": "2020-12-17", "polarity": "Against",
     "note": "strong recommendation against"},
    {"drug": "LPV/r", "version": 3, "release_date": "2020-12-17", "polarity": "Against",
     "note": "strong recommendation against"},
    {"drug": "ivermectin", "version": 4, "release_date": "2021-03-31", "polarity": "Against",
     "note": "only in clinical trials"},
    {"drug": "IL-6 receptor blockers", "version": 5, "release_date": "2021-07-06",
     "polarity": "For", "note": "recommended for severe disease"},
]

# Table targets per drug:
# evidence/comment counts, pairs, subgraphs, top subgraph size, spans,
# supportive/critical tallies, half-critical month window and lead target.
TARGETS = {
    "corticosteroid": dict(E=17, C=72, P=56, S=19, T=16,
                           ev_span=("2020-02-24", "2021-02-18"),
                           cm_span=("2020-03-20", "2021-06-01"),
                           sup=28, crit=12,
                           half_window=("2020-06-01", "2020-07-31"), lead=2.5),
    "remdesivir": dict(E=19, C=66, P=65, S=16, T=28,
                       ev_span=("2020-02-04", "2021-03-18"),
                       cm_span=("2020-03-04", "2021-04-01"),
                       sup=19, crit=30,
                       half_window=("2020-05-01", "2020-08-31"), lead=4.5),
    "HCQ": dict(E=56, C=207, P=190, S=61, T=45,
                ev_span=("2020-02-04", "2021-01-28"),
                cm_span=("2020-03-04", "2021-05-27"),
                sup=62, crit=94,
                half_window=("2020-07-01", "2020-08-31"), lead=4.5),
    "LPV/r": dict(E=12, C=45, P=43, S=11, T=28,
                  ev_span=("2003-05-22", "2021-01-07"),
                  cm_span=("2020-02-24", "2021-03-16"),
                  sup=9, crit=25,
                  half_window=("2020-05-01", "2020-05-31"), lead=7.0),
    "ivermectin": dict(E=4, C=16, P=13, S=7, T=6,
                       ev_span=("2020-04-03", "2021-04-03"),
                       cm_span=("2020-04-16", "2021-07-07"),
                       sup=4, crit=7,
                       half_window=("2021-04-01", "2021-04-30"), lead=-1.0),
    "IL-6 receptor blockers": dict(E=45, C=98, P=96, S=38, T=18,
                                   ev_span=("2013-06-01", "2021-03-18"),
                                   cm_span=("2020-03-31", "2021-07-08"),
                                   sup=48, crit=25,
                                   half_window=("2020-11-01", "2020-11-30"), lead=8.0),
}

GLOBAL_UNIQUE_PAIRS = 427
GLOBAL_EC_PAIRS = 354
GLOBAL_CC_PAIRS = 73

# Topic occurrence counts (1300 total over 427 annotations).
TOPIC_COUNTS = {
    "methodology": {
        "analysis": 183, "intervention": 135, "study design": 110, "population": 45,
        "data": 40, "models": 38, "outcomes": 40, "results": 42, "discussion": 38,
        "generalizability": 36,
    },
    "clinical themes": {
        "clinical practice related": 150, "biological mechanisms": 65,
        "clinical evidence related": 47, "treatment & drug": 30, "safety concerns": 28,
        "dosage issues": 20, "drug interactions": 15, "alternative treatment": 20,
        "diagnosis": 14, "animal model": 14, "genetic issues": 12,
    },
    "other": {
        "just mentioned": 105, "ethical issues": 28, "evidence-based medicine": 12,
        "enlightenment": 11, "critical thinking": 11, "other issues": 11,
    },
}

TOPIC_PERCENT_TARGETS = {
    ("methodology", None): 54.42,
    ("clinical themes", None): 31.92,
    ("other", None): 13.65,
    ("methodology", "analysis"): 14.04,
    ("methodology", "intervention"): 10.38,
    ("methodology", "study design"): 8.46,
    ("clinical themes", "clinical practice related"): 11.54,
    ("other", "just mentioned"): 8.08,
}

TAXONOMY = {level: sorted(tags) for level, tags in TOPIC_COUNTS.items()}

GRADE_MAP = {
    "study design": "StudyDesign",
    "population": "PopulationData",
    "data": "PopulationData",
    "analysis": "Analysis",
    "clinical practice related": "ClinicalPracticeRelated",
    "safety concerns": "AdverseEffect",
    "adverse effect": "AdverseEffect",
}


def d(text):
    return date.fromisoformat(text)


def linspace_dates(lo, hi, n):
    """n dates spread evenly across [lo, hi]."""
    if n <= 0:
        return []
    if n == 1:
        return [lo]
    span = (hi - lo).days
    return [lo + timedelta(days=round(i * span / (n - 1))) for i in range(n)]


class World:
    def __init__(self):
        self.records = {}
        self.links = []
        self.annotations = {}  # (comment, target) -> sentiment
        self.counters = defaultdict(int)

    def add_record(self, pmid, title, when, pub_types, lang="en", journal_only=False):
        assert pmid not in self.records, f"duplicate pmid {pmid}"
        idx = len(self.records)
        rec = {
            "pmid": pmid,
            "title": title,
            "journal": JOURNALS[idx % len(JOURNALS)],
            "pub_types": list(pub_types),
            "language": lang,
        }
        if when is not None:
            if journal_only:
                rec["journal_date"] = when.isoformat()
            else:
                rec["epub_date"] = when.isoformat()
                if idx % 4 == 0:
                    rec["journal_date"] = (when + timedelta(days=21)).isoformat()
        if idx % 3 == 0:
            rec["abstract"] = f"Background and findings for record {pmid}."
        self.records[pmid] = rec
        return pmid

    def add_link(self, source, target, sentiment=None):
        assert source != target
        assert (source, target) not in self.annotations or sentiment is None
        self.links.append((source, target))
        if sentiment is not None:
            self.annotations[(source, target)] = sentiment


class DrugPlan:
    """Unshared component blueprints plus sentiment/date schedules."""

    def __init__(self, name, base_pmid, title_word, comps, crit_dates, holders,
                 ev_interior, cm_interior, spanish, target):
        self.name = name
        self.base_pmid = base_pmid
        self.title_word = title_word
        self.comps = comps            # list of (size, n_evidence, n_cc)
        self.crit_dates = [d(x) for x in crit_dates]
        self.holders = [(s, d(x)) for s, x in holders]
        self.ev_interior = tuple(d(x) for x in ev_interior)
        self.cm_interior = tuple(d(x) for x in cm_interior)
        self.spanish = spanish
        self.target = target


def build_component(world, pmid_iter, title_word, size, n_evidence, n_cc):
    """A tree: evidence backbone joined by bridging comments, single-target
    comments attached afterwards. Returns (evidence, comments, pairs) where
    pairs maps construction order; single-target comment pairs come with
    their comment pmid for scheduling."""
    evidence = []
    comments = []
    pairs = []  # (source, target, single)

    if n_evidence == 0:
        # reply chain: c1 <- c2 <- ... all comment-comment pairs
        chain = [next(pmid_iter) for _ in range(size)]
        for i, pmid in enumerate(chain):
            world.add_record(pmid, f"Reply to correspondence on {title_word} ({pmid})",
                             None, COMMENT_TYPE_CYCLE[pmid % len(COMMENT_TYPE_CYCLE)])
            comments.append(pmid)
        for i in range(1, size):
            world.add_link(chain[i], chain[i - 1])
            pairs.append((chain[i], chain[i - 1], True))
        assert n_cc == size - 1
        return evidence, comments, pairs

    lead_word = title_word[0].upper() + title_word[1:]
    for _ in range(n_evidence):
        pmid = next(pmid_iter)
        world.add_record(pmid,
                         f"{lead_word} in hospitalized patients with COVID-19: cohort {pmid}",
                         None, EVIDENCE_TYPE_CYCLE[pmid % len(EVIDENCE_TYPE_CYCLE)])
        evidence.append(pmid)

    for i in range(1, n_evidence):  # bridging comments keep the tree connected
        pmid = next(pmid_iter)
        world.add_record(pmid, f"Linking the evidence on {title_word}: commentary {pmid}",
                         None, COMMENT_TYPE_CYCLE[pmid % len(COMMENT_TYPE_CYCLE)])
        comments.append(pmid)
        world.add_link(pmid, evidence[i - 1])
        world.add_link(pmid, evidence[i])
        pairs.append((pmid, evidence[i - 1], False))
        pairs.append((pmid, evidence[i], False))

    n_attach = size - n_evidence - (n_evidence - 1)
    assert n_attach >= 0
    cc_left = n_cc
    last_comment = comments[-1] if comments else None
    for j in range(n_attach):
        pmid = next(pmid_iter)
        if cc_left > 0 and last_comment is not None:
            target = last_comment
            cc_left -= 1
        else:
            target = evidence[j % n_evidence]
        world.add_record(pmid, f"Letter regarding {title_word} findings ({pmid})",
                         None, COMMENT_TYPE_CYCLE[pmid % len(COMMENT_TYPE_CYCLE)])
        comments.append(pmid)
        world.add_link(pmid, target)
        pairs.append((pmid, target, True))
        last_comment = pmid
    assert cc_left == 0, f"unused cc budget in component ({size},{n_evidence},{n_cc})"
    return evidence, comments, pairs


def build_drug(world, plan):
    pmid_iter = iter(range(plan.base_pmid, plan.base_pmid + 10_000))
    all_evidence = []
    schedulable = []   # single-target comment pairs, construction order
    other_pairs = []   # bridge pairs
    for size, n_ev, n_cc in plan.comps:
        evidence, comments, pairs = build_component(
            world, pmid_iter, plan.title_word, size, n_ev, n_cc)
        all_evidence.extend(evidence)
        for source, target, single in pairs:
            (schedulable if single else other_pairs).append((source, target))

    # Evidence dates: first record holds the span start, last holds the end.
    lo, hi = d(plan.target["ev_span"][0]), d(plan.target["ev_span"][1])
    interior = linspace_dates(plan.ev_interior[0], plan.ev_interior[1],
                              max(0, len(all_evidence) - 2))
    ev_dates = [lo] + interior + [hi] if len(all_evidence) >= 2 else [lo]
    for pmid, when in zip(all_evidence, ev_dates):
        world.records[pmid]["epub_date"] = when.isoformat()

    # Criticals first, then span holders, then interior fill.
    crit_pairs = schedulable[:len(plan.crit_dates)]
    assert len(crit_pairs) == len(plan.crit_dates), plan.name
    cursor = len(crit_pairs)
    for (source, target), when in zip(crit_pairs, plan.crit_dates):
        world.records[source]["epub_date"] = when.isoformat()
        world.annotations[(source, target)] = "critical"

    for sentiment, when in plan.holders:
        source, target = schedulable[cursor]
        cursor += 1
        world.records[source]["epub_date"] = when.isoformat()
        world.annotations[(source, target)] = sentiment

    remaining = schedulable[cursor:] + other_pairs
    used_sup = sum(1 for s, _ in plan.holders if s == "supportive")
    sup_left = plan.target["sup"] - used_sup - shared_sup(plan.name)
    undated = [source for source, _ in remaining
               if "epub_date" not in world.records[source]]
    fill = linspace_dates(plan.cm_interior[0], plan.cm_interior[1], len(undated))
    for pmid, when in zip(undated, fill):
        # Some comments carry only a journal date; precedence falls back to it.
        journal_only = pmid % 11 == 0
        if journal_only:
            world.records[pmid]["journal_date"] = when.isoformat()
        else:
            world.records[pmid]["epub_date"] = when.isoformat()
    for source, target in remaining:
        if sup_left > 0:
            world.annotations[(source, target)] = "supportive"
            sup_left -= 1
        else:
            world.annotations[(source, target)] = "neutral"
    assert sup_left == 0, f"{plan.name}: supportive budget left over ({sup_left})"

    # Spanish comments: indexed record, a dangling link, no annotation.
    es_dates = linspace_dates(plan.cm_interior[0] + timedelta(days=30),
                              plan.cm_interior[1] - timedelta(days=30), plan.spanish)
    for i in range(plan.spanish):
        pmid = next(pmid_iter)
        world.add_record(pmid, f"Carta sobre {plan.title_word} en COVID-19 ({pmid})",
                         es_dates[i], ["Letter"], lang="es")
        world.links.append((pmid, 99_000_000 + pmid % 1_000_000))


def shared_sup(drug):
    # Supportive pairs contributed by the shared components, per drug.
    return {"remdesivir": 6, "LPV/r": 5, "HCQ": 1, "corticosteroid": 2,
            "IL-6 receptor blockers": 2, "ivermectin": 0}[drug]


def build_shared(world):
    """Components whose titles mention two drug groups at once."""
    # S1: the antiviral discussion shared by remdesivir and LPV/r (28 nodes).
    grein = world.add_record(
        32275812, "Compassionate use of remdesivir compared with lopinavir-ritonavir "
        "in severe COVID-19", d("2020-04-10"), ["Journal Article"])
    cao = world.add_record(
        32187464, "A trial of lopinavir-ritonavir with remdesivir context in adults "
        "hospitalized with severe COVID-19", d("2020-03-18"),
        ["Journal Article", "Randomized Controlled Trial"])
    hamm = world.add_record(
        59100001, "Antiviral options including remdesivir and lopinavir-ritonavir for "
        "immunodeficient patients", d("2020-04-28"), ["Journal Article", "Review"])
    world.add_link(hamm, grein, "neutral")
    world.add_link(hamm, cao, "neutral")

    grein_crit = ["2020-05-02", "2020-05-04", "2020-05-07", "2020-05-10",
                  "2020-08-10", "2020-10-15", "2021-02-20"]
    wu = None
    for i, when in enumerate(grein_crit):
        pmid = 59100010 + i
        world.add_record(pmid, f"Concerns about remdesivir versus lopinavir-ritonavir "
                         f"evidence ({pmid})", d(when), COMMENT_TYPE_CYCLE[i % 4])
        world.add_link(pmid, grein, "critical")
        if i == 0:
            wu = pmid
    cao_crit = ["2020-05-03", "2020-05-05", "2020-05-08", "2020-05-11",
                "2020-05-15", "2020-09-20", "2020-12-30"]
    cao_sup = ["2020-06-05", "2020-06-20", "2020-07-08", "2020-07-22", "2020-08-05"]
    cao_neut = ["2020-04-22", "2020-05-20", "2020-06-12", "2020-09-05", "2020-10-20"]
    base = 59100020
    for offset, (dates, sentiment) in enumerate(
            [(cao_crit, "critical"), (cao_sup, "supportive"), (cao_neut, "neutral")]):
        for i, when in enumerate(dates):
            pmid = base + offset * 10 + i
            world.add_record(pmid, f"Letter on lopinavir-ritonavir and remdesivir "
                             f"trial ({pmid})", d(when), COMMENT_TYPE_CYCLE[(offset + i) % 4])
            world.add_link(pmid, cao, sentiment)
    reply = world.add_record(
        59100060, "Authors' reply concerning remdesivir and lopinavir-ritonavir use",
        d("2020-06-25"), ["Comment", "Letter"])
    world.add_link(reply, wu, "neutral")

    # S2: HCQ / LPV/r comparison (5 nodes, 4 critical pairs).
    s2_ev = world.add_record(
        59200001, "Hydroxychloroquine versus lopinavir-ritonavir for early COVID-19",
        d("2020-03-10"), ["Journal Article", "Clinical Trial"])
    for i, when in enumerate(["2020-05-03", "2020-05-06", "2020-05-09", "2020-05-12"]):
        pmid = 59200010 + i
        world.add_record(pmid, f"Doubts on hydroxychloroquine and lopinavir-ritonavir "
                         f"comparison ({pmid})", d(when), COMMENT_TYPE_CYCLE[i % 4])
        world.add_link(pmid, s2_ev, "critical")

    # S3: remdesivir / HCQ head-to-head (4 nodes, 2 critical + 1 supportive reply).
    s3_ev = world.add_record(
        59300001, "Remdesivir or hydroxychloroquine for severe disease: observational data",
        d("2020-05-15"), ["Journal Article"])
    c1 = world.add_record(59300010, "Remdesivir and hydroxychloroquine endpoints "
                          "questioned", d("2020-06-10"), ["Letter"])
    c2 = world.add_record(59300011, "Bias in remdesivir-hydroxychloroquine comparisons",
                          d("2020-09-10"), ["Letter", "Comment"])
    c3 = world.add_record(59300012, "Support for the remdesivir and hydroxychloroquine "
                          "critique", d("2020-10-01"), ["Comment"])
    world.add_link(c1, s3_ev, "critical")
    world.add_link(c2, s3_ev, "critical")
    world.add_link(c3, c2, "supportive")

    # S4: tocilizumab + corticosteroid safety thread (3 nodes, 2 supportive pairs).
    s4_ev = world.add_record(
        59400001, "Tocilizumab combined with corticosteroid therapy in severe COVID-19",
        d("2020-04-06"), ["Journal Article"])
    for i, when in enumerate(["2020-07-20", "2020-08-05"]):
        pmid = 59400010 + i
        world.add_record(pmid, f"Experience with tocilizumab plus corticosteroid "
                         f"treatment ({pmid})", d(when), ["Letter"])
        world.add_link(pmid, s4_ev, "supportive")


def drug_plans():
    return [
        DrugPlan(
            "corticosteroid", 51_000_000, "corticosteroid therapy",
            comps=[(16, 2, 4), (6, 1, 2), (5, 1, 2), (4, 1, 1), (4, 1, 0), (4, 1, 0)]
                  + [(3, 1, 0)] * 9 + [(2, 0, 1)] * 3,
            crit_dates=["2020-03-20", "2020-04-10", "2020-04-25", "2020-05-12",
                        "2020-05-30", "2020-06-18", "2020-07-06", "2020-07-15",
                        "2020-07-24", "2020-08-02", "2020-08-14", "2020-08-25"],
            holders=[("supportive", "2021-06-01")],
            ev_interior=("2020-03-01", "2021-02-10"),
            cm_interior=("2020-03-25", "2021-05-25"),
            spanish=14, target=TARGETS["corticosteroid"]),
        DrugPlan(
            "remdesivir", 52_000_000, "remdesivir",
            comps=[(7, 1, 2), (6, 2, 2), (5, 2, 2), (4, 1, 1), (4, 1, 1)]
                  + [(3, 1, 0)] * 5 + [(2, 1, 0)] * 4,
            crit_dates=["2020-03-04", "2020-04-18", "2020-05-30", "2020-06-20",
                        "2020-07-05", "2020-07-25", "2020-08-15", "2020-09-05",
                        "2020-10-05", "2020-11-05", "2020-12-10", "2021-01-15",
                        "2021-02-15", "2021-03-28"],
            holders=[("supportive", "2021-04-01")],
            ev_interior=("2020-02-20", "2021-03-01"),
            cm_interior=("2020-03-10", "2021-03-26"),
            spanish=4, target=TARGETS["remdesivir"]),
        DrugPlan(
            "HCQ", 53_000_000, "hydroxychloroquine",
            comps=[(45, 5, 10), (20, 3, 6), (12, 2, 4), (8, 1, 3), (6, 1, 2),
                   (5, 1, 1), (5, 1, 1), (4, 1, 0), (4, 1, 0), (4, 1, 0)]
                  + [(3, 1, 0)] * 31 + [(2, 1, 0)] * 6 + [(2, 0, 1)] * 12,
            crit_dates=(["2020-03-04"]
                        + [x.isoformat() for x in linspace_dates(d("2020-03-12"),
                                                                 d("2020-07-28"), 40)]
                        + ["2020-08-01"]
                        + [x.isoformat() for x in linspace_dates(d("2020-08-08"),
                                                                 d("2021-05-20"), 45)]
                        + ["2021-05-27"]),
            holders=[],
            ev_interior=("2020-02-20", "2021-01-20"),
            cm_interior=("2020-03-09", "2021-05-22"),
            spanish=12, target=TARGETS["HCQ"]),
        DrugPlan(
            "LPV/r", 54_000_000, "lopinavir-ritonavir",
            comps=[(3, 1, 0)] * 3 + [(2, 1, 0)] * 6,
            crit_dates=["2020-06-15", "2020-07-20", "2020-08-10", "2020-09-01",
                        "2020-11-15", "2021-01-20", "2021-03-10"],
            holders=[("neutral", "2020-02-24"), ("supportive", "2021-03-16")],
            ev_interior=("2020-02-10", "2020-12-15"),
            cm_interior=("2020-03-01", "2021-03-10"),
            spanish=3, target=TARGETS["LPV/r"]),
        DrugPlan(
            "ivermectin", 55_000_000, "ivermectin",
            comps=[(6, 1, 0), (4, 1, 0), (2, 1, 0), (2, 1, 0), (2, 0, 1), (2, 0, 1),
                   (2, 0, 1)],
            crit_dates=["2020-05-01", "2021-02-10", "2021-03-20", "2021-04-30",
                        "2021-05-15", "2021-06-10", "2021-07-01"],
            holders=[("supportive", "2020-04-16"), ("supportive", "2021-07-07")],
            ev_interior=("2020-06-01", "2021-03-01"),
            cm_interior=("2020-04-20", "2021-06-28"),
            spanish=0, target=TARGETS["ivermectin"]),
        DrugPlan(
            "IL-6 receptor blockers", 56_000_000, "tocilizumab",
            comps=[(18, 3, 3), (10, 3, 2), (8, 2, 1), (6, 2, 1), (5, 2, 0), (5, 2, 0),
                   (4, 2, 0), (4, 1, 0), (4, 1, 0), (4, 1, 0)]
                  + [(3, 1, 0)] * 9 + [(2, 1, 0)] * 16 + [(2, 0, 1)] * 2,
            crit_dates=["2020-04-20", "2020-05-10", "2020-05-25", "2020-06-10",
                        "2020-06-25", "2020-07-10", "2020-07-25", "2020-08-10",
                        "2020-08-25", "2020-09-10", "2020-10-01", "2020-10-25",
                        "2020-11-06", "2020-11-18", "2020-12-01", "2020-12-15",
                        "2021-01-05", "2021-01-20", "2021-02-10", "2021-03-01",
                        "2021-03-20", "2021-04-10", "2021-05-01", "2021-05-20",
                        "2021-06-20"],
            holders=[("supportive", "2020-03-31"), ("supportive", "2021-07-08")],
            ev_interior=("2020-02-15", "2021-01-20"),
            cm_interior=("2020-04-05", "2021-06-30"),
            spanish=9, target=TARGETS["IL-6 receptor blockers"]),
    ]


def assign_topics(world):
    """Distributes the global topic-occurrence multiset over the annotations."""
    pairs = sorted(world.annotations.keys())
    n = len(pairs)
    counts = [(level, tag, count)
              for level, tags in TOPIC_COUNTS.items() for tag, count in tags.items()]
    total = sum(c for _, _, c in counts)
    extra = total - 3 * n
    assert 0 <= extra <= n, f"topic total {total} does not fit over {n} annotations"

    remaining = {(level, tag): count for level, tag, count in counts}
    topics = {}
    for i, pair in enumerate(pairs):
        k = 4 if i < extra else 3
        picks = sorted(remaining.items(), key=lambda kv: (-kv[1], kv[0]))[:k]
        chosen = [key for key, count in picks if count > 0]
        assert len(chosen) == k, "ran out of topic occurrences"
        for key in chosen:
            remaining[key] -= 1
        topics[pair] = chosen
    assert all(v == 0 for v in remaining.values())
    return topics


# --- independent verification ---------------------------------------------

def best_date(rec):
    for key in ("epub_date", "journal_date"):
        if key in rec:
            return d(rec[key])
    return None


def classify(rec, is_source):
    if set(rec["pub_types"]) & COMMENT_TYPES or is_source:
        return "comment"
    if set(rec["pub_types"]) & PRIMARY_TYPES and "Review" not in rec["pub_types"]:
        return "original"
    return "other"


def components_of(nodes, edges):
    adj = defaultdict(set)
    for s, t in edges:
        adj[s].add(t)
        adj[t].add(s)
    seen = set()
    comps = []
    for start in nodes:
        if start in seen:
            continue
        stack = [start]
        comp = set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        seen |= comp
        comps.append(comp)
    return sorted(comps, key=lambda c: (-len(c), min(c)))


def verify(world, topics):
    records, links = world.records, world.links
    unique_links = sorted(set(links))
    resolved = [(s, t) for s, t in unique_links if s in records and t in records]
    assert len(resolved) == GLOBAL_UNIQUE_PAIRS, len(resolved)
    assert len(world.annotations) == GLOBAL_UNIQUE_PAIRS

    sources = {s for s, _ in resolved}
    kinds = {p: classify(r, p in sources) for p, r in records.items()}
    cc = sum(1 for _, t in resolved if kinds[t] == "comment")
    assert cc == GLOBAL_CC_PAIRS, f"comment-comment pairs: {cc}"
    assert len(resolved) - cc == GLOBAL_EC_PAIRS

    lead_values = []
    for drug, target in TARGETS.items():
        synonyms = [s.casefold() for s in LEXICON[drug]]
        matched = {p for p, r in records.items()
                   if any(s in r["title"].casefold() for s in synonyms)}
        kept = [(s, t) for s, t in unique_links if s in matched or t in matched]
        rec_set = set(matched)
        for s, t in kept:
            rec_set |= {x for x in (s, t) if x in records}
        pairs = sorted({(s, t) for s, t in kept if s in rec_set and t in rec_set})
        assert len(pairs) == target["P"], f"{drug} pairs {len(pairs)} != {target['P']}"

        scoped_sources = {s for s, _ in pairs}
        ev = cm = 0
        ev_dates, cm_dates = [], []
        for p in sorted(rec_set):
            kind = classify(records[p], p in scoped_sources)
            when = best_date(records[p])
            if kind == "comment":
                cm += 1
                if when:
                    cm_dates.append(when)
            else:
                ev += 1
                if when:
                    ev_dates.append(when)
        assert ev == target["E"], f"{drug} evidence {ev} != {target['E']}"
        assert cm == target["C"], f"{drug} comments {cm} != {target['C']}"
        assert (min(ev_dates).isoformat(), max(ev_dates).isoformat()) == target["ev_span"], drug
        assert (min(cm_dates).isoformat(), max(cm_dates).isoformat()) == target["cm_span"], drug

        en_nodes = {p for p in rec_set if records[p]["language"] == "en"}
        en_edges = [(s, t) for s, t in pairs if s in en_nodes and t in en_nodes]
        comps = components_of(sorted(en_nodes), en_edges)
        assert len(comps) == target["S"], f"{drug} subgraphs {len(comps)} != {target['S']}"
        assert len(comps[0]) == target["T"], f"{drug} top {len(comps[0])} != {target['T']}"

        sup = sum(1 for (s, t), v in world.annotations.items()
                  if t in rec_set and v == "supportive")
        crit = sum(1 for (s, t), v in world.annotations.items()
                   if t in rec_set and v == "critical")
        assert sup == target["sup"], f"{drug} supportive {sup} != {target['sup']}"
        assert crit == target["crit"], f"{drug} critical {crit} != {target['crit']}"

        events = sorted((best_date(records[s]), s, v)
                        for (s, t), v in world.annotations.items() if t in rec_set)
        crit_dates = [when for when, _, v in events if v == "critical"]
        k = (len(crit_dates) + 1) // 2
        half = crit_dates[k - 1]
        lo, hi = d(target["half_window"][0]), d(target["half_window"][1])
        assert lo <= half <= hi, f"{drug} half-critical {half} outside window"
        release = d(next(g["release_date"] for g in GUIDELINES if g["drug"] == drug))
        lead = (release - half).days / 30.4375
        assert abs(lead - target["lead"]) <= 0.8, f"{drug} lead {lead:.2f} vs {target['lead']}"
        lead_values.append(lead)

    average_lead = sum(lead_values) / len(lead_values)
    assert abs(average_lead - 4.25) <= 0.5, f"average lead {average_lead:.3f}"

    occurrences = defaultdict(int)
    total = 0
    for pair, tags in topics.items():
        for level, tag in tags:
            occurrences[(level, tag)] += 1
            total += 1
    for (level, tag), expect in TOPIC_PERCENT_TARGETS.items():
        if tag is None:
            count = sum(v for (l, _), v in occurrences.items() if l == level)
        else:
            count = occurrences[(level, tag)]
        got = 100.0 * count / total
        assert abs(got - expect) <= 0.05, f"{level}/{tag}: {got:.4f} vs {expect}"

    grein_counts = defaultdict(int)
    for (s, t), v in world.annotations.items():
        if t == 32275812:
            grein_counts[v] += 1
    assert grein_counts["critical"] == 7 and sum(grein_counts.values()) == 8

    print(f"verified: {len(records)} records, {len(resolved)} unique pairs "
          f"({GLOBAL_EC_PAIRS} ec / {GLOBAL_CC_PAIRS} cc), "
          f"average half-critical lead {average_lead:.3f} months")


def emit(world, topics):
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    with open(OUT_DIR / "corpus.jsonl", "w") as out:
        header = {"kind": "header", "schema": 1,
                  "query": "(Covid-19[MeSH] OR Covid-19[Title/Abstract]) and hascommentin",
                  "fetched_at": "2021-07-21T00:00:00Z"}
        out.write(json.dumps(header, sort_keys=True, separators=(",", ":")) + "\n")
        for pmid in sorted(world.records):
            rec = dict(world.records[pmid])
            rec["kind"] = "record"
            rec["pub_types"] = sorted(rec["pub_types"])
            out.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")
        for source, target in sorted(set(world.links)):
            out.write(json.dumps({"kind": "link", "source": source, "target": target},
                                 sort_keys=True, separators=(",", ":")) + "\n")

    with open(OUT_DIR / "annotations.csv", "w") as out:
        for source, target in sorted(world.annotations):
            tags = ";".join(f"{level}:{tag}" for level, tag in topics[(source, target)])
            out.write(f"{source},{target},{world.annotations[(source, target)]},{tags}\n")

    with open(OUT_DIR / "lexicon.json", "w") as out:
        json.dump(LEXICON, out, indent=2, sort_keys=True)
        out.write("\n")
    with open(OUT_DIR / "guidelines.json", "w") as out:
        json.dump(GUIDELINES, out, indent=2)
        out.write("\n")
    with open(OUT_DIR / "taxonomy.json", "w") as out:
        json.dump(TAXONOMY, out, indent=2, sort_keys=True)
        out.write("\n")
    with open(OUT_DIR / "grade_map.json", "w") as out:
        json.dump(GRADE_MAP, out, indent=2, sort_keys=True)
        out.write("\n")
    print(f"wrote fixture files under {OUT_DIR}")


def main():
    world = World()
    build_shared(world)
    for plan in drug_plans():
        build_drug(world, plan)
    topics = assign_topics(world)
    verify(world, topics)
    emit(world, topics)


if __name__ == "__main__":
    sys.exit(main())
