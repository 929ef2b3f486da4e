#!/usr/bin/env python3
"""Regenerates the bundled synthetic fixture corpus under data/fixture/.

Three prolific authors write in clearly different styles (short plain
sentences; long subordinate-heavy sentences; chatty questions and
exclamations). A fourth author with only a handful of documents and a few
short documents exercise the corpus filter. Every document gets a gold
CoNLL-U file, RST relation counts and grammatical-error counts; a separate
CoNLL-U file holds tagger training sentences drawn from the same grammar.

Usage: tools/make_fixture.py [--out data/fixture] [--seed 20240229]
"""

import argparse
import json
import os
import random
import shutil

DET = ["the", "a", "this", "that", "every"]
ADJ = ["small", "bright", "quiet", "old", "heavy", "careful", "distant",
       "green", "strange", "simple", "gentle", "curious", "narrow", "warm"]
NOUN = ["dog", "garden", "river", "book", "window", "teacher", "market",
        "city", "letter", "road", "morning", "kitchen", "song", "idea",
        "machine", "bridge", "friend", "storm", "lamp", "train", "story"]
PROPN = ["Maria", "Tokyo", "Oliver", "Lisbon", "Priya", "Nairobi"]
VERB_PAST = ["watched", "found", "carried", "opened", "painted", "followed",
             "visited", "described", "built", "crossed", "remembered",
             "noticed", "fixed", "cleaned"]
VERB_BASE = ["watch", "find", "carry", "open", "paint", "follow", "visit",
             "describe", "build", "cross", "remember", "notice", "fix"]
VERB_INTR = ["slept", "laughed", "waited", "arrived", "smiled", "left",
             "stayed", "returned"]
VERB_PASS = ["written", "painted", "built", "found", "opened", "carried"]
ADV = ["slowly", "quietly", "often", "suddenly", "carefully", "always",
       "rarely", "certainly", "really", "soon"]
ADP = ["in", "near", "across", "under", "behind", "with", "from", "over"]
PRON_SUBJ = ["I", "you", "we", "they", "she", "he"]
PRON_POSS = ["my", "your", "our", "their", "her", "his"]
NUM = ["two", "three", "seven", "twelve", "four"]
SCONJ = ["because", "although", "while", "when", "if"]
INTJ = ["oh", "well", "wow", "hey"]
MODAL = ["will", "can", "should", "might", "could"]
THINK = ["think", "believe", "guess", "suppose"]

NO_SPACE_BEFORE = {".", ",", "!", "?", "'s", ";"}


class Sentence:
    """Tokens with 0-based heads (-1 for the root) and labels."""

    def __init__(self):
        self.tokens = []  # [form, upos, head, deprel]
        self.relations = {"elaboration": 0, "attribution": 0, "joint": 0}

    def add(self, form, upos, deprel, head=None):
        self.tokens.append([form, upos, head, deprel])
        return len(self.tokens) - 1

    def attach(self, idx, head):
        self.tokens[idx][2] = head


def noun_phrase(s, rng, head_of_np, deprel, adjectives=0, allow_poss=True,
                allow_num=False, obj_label=None):
    """Adds an NP; its head noun attaches to head_of_np (maybe later)."""
    choice = rng.random()
    dependents = []
    if choice < 0.12:
        n = s.add(rng.choice(PROPN), "PROPN", obj_label or deprel, head_of_np)
        return n
    if allow_poss and choice < 0.3:
        dependents.append(s.add(rng.choice(PRON_POSS), "PRON", "poss"))
    elif allow_num and choice < 0.45:
        dependents.append(s.add(rng.choice(NUM), "NUM", "nummod"))
    else:
        dependents.append(s.add(rng.choice(DET), "DET", "det"))
    for _ in range(adjectives):
        dependents.append(s.add(rng.choice(ADJ), "ADJ", "amod"))
    if rng.random() < 0.1:
        dependents.append(s.add(rng.choice(NOUN), "NOUN", "compound"))
    noun = rng.choice(NOUN)
    if dependents and s.tokens[dependents[0]][0] in ("a",) and noun[0] in "aeiou":
        s.tokens[dependents[0]][0] = "an"
    if allow_num and s.tokens[dependents[0]][1] == "NUM":
        noun = noun[:-1] + "ies" if noun.endswith("y") else noun + "s"
    n = s.add(noun, "NOUN", obj_label or deprel, head_of_np)
    for d in dependents:
        s.attach(d, n)
    return n


def prep_phrase(s, rng, head, adjectives=0):
    p = s.add(rng.choice(ADP), "ADP", "prep", head)
    noun_phrase(s, rng, p, "pobj", adjectives=adjectives)
    return p


def plain_clause(s, rng, adjectives=0, pp=0.3, ud_labels=False):
    """subj verb obj [pp]; returns the verb index."""
    subj = noun_phrase(s, rng, None, "nsubj", adjectives=adjectives)
    v = s.add(rng.choice(VERB_PAST), "VERB", "root")
    s.attach(subj, v)
    noun_phrase(s, rng, v, "dobj", adjectives=adjectives,
                obj_label="obj" if ud_labels and rng.random() < 0.5 else None,
                allow_num=True)
    if rng.random() < pp:
        prep_phrase(s, rng, v, adjectives=min(adjectives, 1))
    return v


def finish(s, rng, root, mark="."):
    s.add(mark, "PUNCT", "punct", root)
    s.tokens[root][3] = "root"
    s.tokens[root][2] = -1


def t_simple(rng, ud_labels=False):
    s = Sentence()
    v = plain_clause(s, rng, ud_labels=ud_labels)
    finish(s, rng, v)
    return s


def t_intransitive(rng, adjectives=0):
    s = Sentence()
    subj = noun_phrase(s, rng, None, "nsubj", adjectives=adjectives)
    adv = None
    if rng.random() < 0.5:
        adv = s.add(rng.choice(ADV), "ADV", "advmod")
    v = s.add(rng.choice(VERB_INTR), "VERB", "root")
    s.attach(subj, v)
    if adv is not None:
        s.attach(adv, v)
    if rng.random() < 0.5:
        prep_phrase(s, rng, v, adjectives=adjectives)
    finish(s, rng, v)
    return s


def t_copula(rng):
    s = Sentence()
    subj = noun_phrase(s, rng, None, "nsubj")
    cop = s.add("was", "AUX", "root")
    s.attach(subj, cop)
    if rng.random() < 0.5:
        s.add(rng.choice(ADJ), "ADJ", "acomp", cop)
    else:
        noun_phrase(s, rng, cop, "attr", adjectives=1, allow_poss=False)
    finish(s, rng, cop)
    return s


def t_modal(rng, negate=False):
    s = Sentence()
    subj = s.add(rng.choice(PRON_SUBJ), "PRON", "nsubj")
    aux = s.add(rng.choice(MODAL), "AUX", "aux")
    neg = s.add("not", "PART", "neg") if negate else None
    v = s.add(rng.choice(VERB_BASE), "VERB", "root")
    for i in (subj, aux, neg):
        if i is not None:
            s.attach(i, v)
    noun_phrase(s, rng, v, "dobj")
    finish(s, rng, v)
    return s


def t_coordinated(rng, adjectives=0, ud_labels=False):
    s = Sentence()
    v = plain_clause(s, rng, adjectives=adjectives, pp=0.2, ud_labels=ud_labels)
    s.add(rng.choice(["and", "but"]), "CCONJ", "cc", v)
    v2 = s.add(rng.choice(VERB_PAST), "VERB", "conj", v)
    noun_phrase(s, rng, v2, "dobj", adjectives=adjectives)
    s.relations["joint"] += 1
    finish(s, rng, v)
    return s


def t_subordinate(rng, adjectives=1, ud_labels=False):
    s = Sentence()
    v = plain_clause(s, rng, adjectives=adjectives, pp=0.5, ud_labels=ud_labels)
    m = s.add(rng.choice(SCONJ), "SCONJ", "mark")
    subj = s.add(rng.choice(PRON_SUBJ).lower() if rng.random() < 0.5 else "the",
                 "PRON", "nsubj")
    if s.tokens[subj][0] == "the":
        s.tokens[subj][1] = "DET"
        s.tokens[subj][3] = "det"
        n = s.add(rng.choice(NOUN), "NOUN", "nsubj")
        s.attach(subj, n)
        subj = n
    if s.tokens[subj][0] == "i":
        s.tokens[subj][0] = "I"
    adv = s.add(rng.choice(ADV), "ADV", "advmod") if rng.random() < 0.6 else None
    v2 = s.add(rng.choice(VERB_PAST), "VERB", "advcl", v)
    for i in (m, subj, adv):
        if i is not None:
            s.attach(i, v2)
    noun_phrase(s, rng, v2, "dobj", adjectives=adjectives)
    if rng.random() < 0.5:
        prep_phrase(s, rng, v2, adjectives=1)
    s.relations["elaboration"] += 1
    finish(s, rng, v)
    return s


def t_relative(rng):
    s = Sentence()
    det = s.add(rng.choice(["the", "that"]), "DET", "det")
    adj = s.add(rng.choice(ADJ), "ADJ", "amod")
    n = s.add(rng.choice(NOUN), "NOUN", "nsubj")
    s.attach(det, n)
    s.attach(adj, n)
    that = s.add("that", "PRON", "nsubj")
    rv = s.add(rng.choice(VERB_INTR), "VERB", "relcl", n)
    s.attach(that, rv)
    prep_phrase(s, rng, rv, adjectives=1)
    adv = s.add(rng.choice(ADV), "ADV", "advmod")
    v = s.add(rng.choice(VERB_PAST), "VERB", "root")
    s.attach(n, v)
    s.attach(adv, v)
    noun_phrase(s, rng, v, "dobj", adjectives=2)
    s.relations["elaboration"] += 1
    finish(s, rng, v)
    return s


def t_passive(rng):
    s = Sentence()
    subj = noun_phrase(s, rng, None, "nsubjpass", allow_poss=False)
    aux = s.add("was", "AUX", "auxpass")
    v = s.add(rng.choice(VERB_PASS), "VERB", "root")
    s.attach(subj, v)
    s.attach(aux, v)
    by = s.add("by", "ADP", "prep", v)
    s.add(rng.choice(PROPN), "PROPN", "pobj", by)
    finish(s, rng, v)
    return s


def t_possessive(rng):
    s = Sentence()
    owner = s.add(rng.choice(PROPN), "PROPN", "poss")
    case = s.add("'s", "PART", "case", owner)
    n = s.add(rng.choice(NOUN), "NOUN", "nsubj")
    s.attach(owner, n)
    v = s.add(rng.choice(VERB_INTR), "VERB", "root")
    s.attach(n, v)
    np_ = s.add(rng.choice(["yesterday", "today"]), "NOUN", "npadvmod", v)
    del case, np_
    finish(s, rng, v)
    return s


def t_xcomp(rng):
    s = Sentence()
    subj = s.add(rng.choice(PRON_SUBJ), "PRON", "nsubj")
    v = s.add(rng.choice(["wanted", "tried", "hoped"]), "VERB", "root")
    s.attach(subj, v)
    to = s.add("to", "PART", "aux")
    v2 = s.add(rng.choice(VERB_BASE), "VERB", "xcomp", v)
    s.attach(to, v2)
    noun_phrase(s, rng, v2, "dobj")
    finish(s, rng, v)
    return s


def t_particle(rng):
    s = Sentence()
    subj = s.add(rng.choice(PRON_SUBJ), "PRON", "nsubj")
    v = s.add(rng.choice(["picked", "looked", "gave"]), "VERB", "root")
    s.attach(subj, v)
    s.add("up", "ADP", "prt", v)
    noun_phrase(s, rng, v, "dobj")
    p = s.add(rng.choice(["after", "before"]), "ADP", "prep", v)
    s.add(rng.choice(["leaving", "eating", "reading"]), "VERB", "pcomp", p)
    finish(s, rng, v)
    return s


def t_question(rng):
    s = Sentence()
    aux = s.add(rng.choice(["did", "can", "will"]), "AUX", "aux")
    subj = s.add(rng.choice(PRON_SUBJ), "PRON", "nsubj")
    v = s.add(rng.choice(VERB_BASE), "VERB", "root")
    s.attach(aux, v)
    s.attach(subj, v)
    noun_phrase(s, rng, v, "dobj")
    finish(s, rng, v, mark="?")
    return s


def t_exclaim(rng):
    s = Sentence()
    intj = s.add(rng.choice(INTJ), "INTJ", "intj")
    comma = s.add(",", "PUNCT", "punct")
    subj = s.add(rng.choice(PRON_SUBJ), "PRON", "nsubj")
    v = s.add(rng.choice(VERB_PAST), "VERB", "root")
    for i in (intj, comma, subj):
        s.attach(i, v)
    noun_phrase(s, rng, v, "dobj")
    finish(s, rng, v, mark="!")
    return s


def t_opinion(rng):
    s = Sentence()
    subj = s.add("I", "PRON", "nsubj")
    v = s.add(rng.choice(THINK), "VERB", "root")
    s.attach(subj, v)
    that = s.add("that", "SCONJ", "mark") if rng.random() < 0.5 else None
    subj2 = s.add(rng.choice(PRON_SUBJ), "PRON", "nsubj")
    if s.tokens[subj2][0] == "I" and that is None:
        s.tokens[subj2][0] = "we"
    v2 = s.add(rng.choice(VERB_PAST), "VERB", "ccomp", v)
    for i in (that, subj2):
        if i is not None:
            s.attach(i, v2)
    noun_phrase(s, rng, v2, "dobj")
    s.relations["attribution"] += 1
    finish(s, rng, v)
    return s


def t_appositive(rng):
    s = Sentence()
    name = s.add(rng.choice(PROPN), "PROPN", "nsubj")
    c1 = s.add(",", "PUNCT", "punct", name)
    det = s.add(rng.choice(["a", "the"]), "DET", "det")
    app = s.add(rng.choice(["teacher", "friend", "painter", "neighbor"]), "NOUN",
                "appos", name)
    s.attach(det, app)
    if s.tokens[det][0] == "a" and s.tokens[app][0][0] in "aeiou":
        s.tokens[det][0] = "an"
    c2 = s.add(",", "PUNCT", "punct", name)
    v = s.add(rng.choice(VERB_PAST), "VERB", "root")
    s.attach(name, v)
    noun_phrase(s, rng, v, "dobj")
    acl = s.add(rng.choice(["carrying", "holding", "wearing"]), "VERB", "acl")
    noun_phrase(s, rng, acl, "dobj", allow_poss=False)
    s.attach(acl, v)
    s.add("here", "ADV", "dep", v) if rng.random() < 0.2 else None
    del c1, c2
    s.relations["elaboration"] += 1
    finish(s, rng, v)
    return s


STYLES = {
    # Short plain declaratives.
    "plain": [(t_simple, 5), (t_intransitive, 4), (t_copula, 3), (t_modal, 1),
              (t_possessive, 1), (t_passive, 1)],
    # Long, clause-heavy sentences.
    "ornate": [(lambda r: t_subordinate(r, 2, ud_labels=True), 5),
               (t_relative, 3),
               (lambda r: t_coordinated(r, 2, ud_labels=True), 3),
               (t_appositive, 2), (t_passive, 1),
               (lambda r: t_intransitive(r, 2), 1)],
    # Conversational: questions, exclamations, opinions.
    "chatty": [(t_question, 4), (t_exclaim, 3), (t_opinion, 3),
               (lambda r: t_modal(r, negate=True), 2), (t_xcomp, 2),
               (t_particle, 2), (t_simple, 1)],
}


def pick(rng, weighted):
    total = sum(w for _, w in weighted)
    x = rng.random() * total
    for f, w in weighted:
        x -= w
        if x < 0:
            return f
    return weighted[-1][0]


def capitalize(s):
    form = s.tokens[0][0]
    s.tokens[0][0] = form[0].upper() + form[1:]


def render(sentences):
    """Text plus per-sentence SpaceAfter flags."""
    parts = []
    for si, s in enumerate(sentences):
        for ti, tok in enumerate(s.tokens):
            if parts and tok[0] not in NO_SPACE_BEFORE:
                parts.append(" ")
            parts.append(tok[0])
    return "".join(parts)


def conllu(doc_id, sentences):
    lines = []
    for si, s in enumerate(sentences, 1):
        lines.append(f"# sent_id = {doc_id}-{si}")
        lines.append(f"# text = {render([s])}")
        for ti, (form, upos, head, deprel) in enumerate(s.tokens):
            nxt = s.tokens[ti + 1][0] if ti + 1 < len(s.tokens) else None
            misc = "SpaceAfter=No" if nxt in NO_SPACE_BEFORE else "_"
            lines.append("\t".join([str(ti + 1), form, "_", upos, "_", "_",
                                    str(head + 1), deprel, "_", misc]))
        lines.append("")
    return "\n".join(lines) + "\n"


def words(text):
    return len(text.split())


def make_doc(rng, style, min_words, extra_sentences):
    sentences = []
    while True:
        s = pick(rng, STYLES[style])(rng)
        capitalize(s)
        sentences.append(s)
        if words(render(sentences)) >= min_words:
            if extra_sentences <= 0:
                break
            extra_sentences -= 1
    return sentences


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..", "data", "fixture"))
    ap.add_argument("--seed", type=int, default=20240229)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = os.path.abspath(args.out)
    conllu_dir = os.path.join(out, "conllu")
    if os.path.isdir(conllu_dir):
        shutil.rmtree(conllu_dir)
    os.makedirs(conllu_dir)

    authors = [
        # author, style, docs, min words, extra sentences, error rate / 100 words
        ("ava", "plain", 42, 55, (0, 4), 1.0),
        ("ben", "ornate", 40, 70, (0, 3), 2.5),
        ("cleo", "chatty", 41, 55, (0, 5), 4.0),
        ("dan", "plain", 6, 55, (0, 2), 1.5),  # too few documents
    ]
    docs, rst, errors = [], [], []
    seen_first = set()
    for author, style, n_docs, min_words, extra, err_rate in authors:
        produced = 0
        short_left = 2 if author != "dan" else 0
        while produced < n_docs + short_left:
            short = produced >= n_docs
            mw = rng.randint(15, 35) if short else min_words
            sentences = make_doc(rng, style, mw, 0 if short else rng.randint(*extra))
            first = render(sentences[:1])
            if first in seen_first:
                continue
            seen_first.add(first)
            produced += 1
            doc_id = f"{author}-{produced:03d}"
            text = render(sentences)
            docs.append({"doc_id": doc_id, "author_id": author, "source": "other",
                         "text": text})
            with open(os.path.join(conllu_dir, doc_id + ".conllu"), "w") as f:
                f.write(conllu(doc_id, sentences))
            rel = {"elaboration": 0, "attribution": 0, "joint": 0}
            for s in sentences:
                for k, v in s.relations.items():
                    rel[k] += v
            rel["elaboration"] += len(sentences) // 3
            rst.append({"doc_id": doc_id, "counts": rel})
            expected = err_rate * words(text) / 100.0
            total = max(0, int(round(rng.gauss(expected, 0.6))))
            a = rng.randint(0, total)
            b = rng.randint(0, total - a)
            errors.append({"doc_id": doc_id, "counts": {
                "agreement": a, "spelling": b, "punctuation": total - a - b}})

    def dump(name, records):
        with open(os.path.join(out, name), "w") as f:
            for r in records:
                f.write(json.dumps(r, ensure_ascii=False) + "\n")

    dump("corpus.jsonl", docs)
    dump("rst.jsonl", rst)
    dump("errors.jsonl", errors)

    train = []
    for i in range(900):
        style = ["plain", "ornate", "chatty"][i % 3]
        s = pick(rng, STYLES[style])(rng)
        capitalize(s)
        train.append(s)
    with open(os.path.join(out, "tagger_train.conllu"), "w") as f:
        f.write(conllu("train", train))

    sidecars = {"conllu_dir": "conllu", "rst": "rst.jsonl",
                "errors": "errors.jsonl",
                "label_map": "../labelmaps/ud_to_clearnlp.tsv"}
    config = {
        "corpus": "corpus.jsonl",
        "corpus_id": "fixture",
        "filter": {"source": "other", "min_words_per_doc": 50,
                   "min_docs_per_author": 30},
        "seed": 7,
        "tagger": {"train_conllu": "tagger_train.conllu", "iterations": 5},
        "annotations": sidecars,
        "generation_annotations": sidecars,
        "conditioning": "document",
        "generator": {"backend": "oracle", "max_tokens": 256},
        "sensitivity": {"placements": "-2..2", "min_train_docs": 10,
                        "per_author": 3},
        "scaling": {"budgets": [1000, 5000, 10000, 20000]},
        "output_dir": "out",
    }
    with open(os.path.join(out, "pipeline.json"), "w") as f:
        json.dump(config, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
