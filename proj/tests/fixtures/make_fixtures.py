#!/usr/bin/env python3
"""Regenerates the test fixtures under tests/fixtures/.

Run from the repository root:  python3 tests/fixtures/make_fixtures.py

Outputs are committed; rerunning must leave them byte-identical.

  corpora/{old,modern,generated}/   manifests, story texts, CoNLL-U files
  conllu/fifty.conllu               50 sentences with comments, multiword
                                    ranges and empty nodes
  wl_golden.tsv                     WL hashes computed by the reference
                                    implementation below, independent of
                                    the C++ code
  corpora/sources122/               122 titled source stories
  prompts/*.txt                     rendered instruction templates

The CoNLL-U parses are deterministic pseudo-parses (random projective trees
seeded by the sentence text), not linguistic analyses.
"""

import hashlib
import json
import os
import random
import re

ROOT = os.path.dirname(os.path.abspath(__file__))
STORIES = os.path.join(ROOT, "stories")

CORPORA = {
    "old": ("old", [f"old_0{i}" for i in range(1, 7)], None),
    "modern": ("modern", [f"modern_0{i}" for i in range(1, 6)], None),
    "generated": ("generated", [f"gen_0{i}" for i in range(1, 6)], "mock-llm"),
}


def contraction(word):
    """Syntactic words of a contracted surface token, or None."""
    lower = word.lower()
    for suffix in ("n't", "'s"):
        if lower.endswith(suffix) and len(word) > len(suffix):
            return (word[: -len(suffix)], word[-len(suffix):])
    return None


def read_story(name):
    with open(os.path.join(STORIES, name + ".txt"), encoding="utf-8") as f:
        title, _, body = f.read().partition("\n")
    return title.strip(), body.lstrip("\n")


def split_sentences(text):
    text = re.sub(r"\s+", " ", text).strip()
    parts = re.split(r'(?:(?<=[.!?])|(?<=[.!?]["”]))\s+(?=["“]?[A-Z])', text)
    return [p for p in parts if p]


def words_of(sentence):
    out = []
    for tok in sentence.split():
        tok = tok.strip("\"'.,!?;:()“”")
        if tok:
            out.append(tok)
    return out


def random_tree(n, rng):
    """Heads (1-based, 0 = root) of a random projective tree over n tokens."""
    heads = [0] * n

    def build(lo, hi, parent):
        if lo > hi:
            return
        h = rng.randint(lo, hi)
        heads[h] = parent + 1 if parent is not None else 0
        build(lo, h - 1, h)
        build(h + 1, hi, h)

    build(0, n - 1, None)
    return heads


def conllu_block(sentence, sent_id, with_extras=False):
    words = words_of(sentence)
    rng = random.Random(hashlib.sha256(sentence.encode()).hexdigest())
    # Expand contractions into two syntactic words under a range row.
    surface = []
    for w in words:
        parts = contraction(w)
        if parts:
            surface.append((w, parts))
        else:
            surface.append((w, None))
    n = sum(2 if p else 1 for _, p in surface)
    heads = random_tree(n, rng)
    lines = [f"# sent_id = {sent_id}", f"# text = {sentence}"]
    idx = 1
    for w, parts in surface:
        if parts:
            lines.append(f"{idx}-{idx + 1}\t{w}\t_\t_\t_\t_\t_\t_\t_\t_")
            for p in parts:
                h = heads[idx - 1]
                lines.append(f"{idx}\t{p}\t{p.lower()}\tX\t_\t_\t{h}\t{'root' if h == 0 else 'dep'}\t_\t_")
                idx += 1
        else:
            h = heads[idx - 1]
            lines.append(f"{idx}\t{w}\t{w.lower()}\tX\t_\t_\t{h}\t{'root' if h == 0 else 'dep'}\t_\t_")
            idx += 1
        if with_extras and idx == 3:
            lines.append(f"2.1\telided\t_\t_\t_\t_\t_\t_\t2:dep\t_")
    return "\n".join(lines) + "\n"


def write(path, content):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)


def make_corpora():
    for label, (category, names, model) in CORPORA.items():
        base = os.path.join(ROOT, "corpora", label)
        entries = []
        for name in names:
            title, body = read_story(name)
            write(os.path.join(base, "texts", name + ".txt"), body)
            entry = {"id": name, "title": title, "category": category,
                     "path": f"texts/{name}.txt", "provenance": {}}
            if model:
                entry["provenance"] = {"model": model, "mode": "template_T1",
                                       "sample_index": "0"}
            entries.append(entry)
            blocks = [conllu_block(s, f"{name}-{i}") for i, s in enumerate(split_sentences(body))]
            write(os.path.join(base, "conllu", name + ".conllu"), "\n".join(blocks) + "\n")
        write(os.path.join(base, "manifest.json"),
              json.dumps({"label": label, "stories": entries}, indent=2) + "\n")


def make_fifty():
    sentences = []
    for label, (_, names, _) in CORPORA.items():
        for name in names:
            sentences.extend(split_sentences(read_story(name)[1]))
    chosen = [s for s in sentences if any(contraction(w) for w in words_of(s))]
    chosen += [s for s in sentences if s not in chosen]
    chosen = chosen[:50]
    assert len(chosen) == 50
    blocks = ["# newdoc id = fifty\n# global.columns = ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL DEPS MISC"]
    for i, s in enumerate(chosen):
        blocks.append(conllu_block(s, f"fifty-{i}", with_extras=(i % 7 == 3)).rstrip("\n"))
    write(os.path.join(ROOT, "conllu", "fifty.conllu"), "\n\n".join(blocks) + "\n\n")


ADJECTIVES = ["Brave", "Sleepy", "Curious", "Tiny", "Lost", "Happy", "Quiet", "Clever",
              "Grumpy", "Silver", "Hungry"]
NOUNS = ["Cat", "Fox", "Robot", "Dragon", "Garden", "Lantern", "Kite", "Bear", "Boat",
         "Star", "Owl", "Mouse"]


def make_titles():
    """122 short source stories for generation-harness runs."""
    sentences = []
    for _, (_, names, _) in CORPORA.items():
        for name in names:
            sentences.extend(split_sentences(read_story(name)[1]))
    base = os.path.join(ROOT, "corpora", "sources122")
    entries = []
    for i in range(122):
        title = f"The {ADJECTIVES[i % len(ADJECTIVES)]} {NOUNS[(i // len(ADJECTIVES)) % len(NOUNS)]}"
        body = " ".join(sentences[(3 * i + k) % len(sentences)] for k in range(3)) + "\n"
        sid = f"src_{i:03d}"
        write(os.path.join(base, "texts", sid + ".txt"), body)
        entries.append({"id": sid, "title": title, "category": "modern",
                        "path": f"texts/{sid}.txt", "provenance": {}})
    write(os.path.join(base, "manifest.json"),
          json.dumps({"label": "sources122", "stories": entries}, indent=2) + "\n")


# --- reference WL hash -------------------------------------------------------

def digest(s):
    return hashlib.sha256(s.encode()).hexdigest()[:32]


def wl_hash(n, edges, iterations=3):
    preds = [[] for _ in range(n)]
    succs = [[] for _ in range(n)]
    for h, d in edges:
        succs[h].append(d)
        preds[d].append(h)
    labels = [f"{len(preds[v])}:{len(succs[v])}" for v in range(n)]
    for _ in range(iterations):
        nxt = []
        for v in range(n):
            buf = labels[v] + "|in:" + "".join(l + "," for l in sorted(labels[u] for u in preds[v]))
            buf += "|out:" + "".join(l + "," for l in sorted(labels[u] for u in succs[v]))
            nxt.append(digest(buf))
        labels = nxt
    return digest(f"n={n}|" + "".join(l + "," for l in sorted(labels)))


def make_golden():
    graphs = [
        (1, []),
        (2, [(1, 0)]),
        (3, [(0, 1), (1, 2)]),
        (3, [(0, 1), (0, 2)]),
        (4, [(0, 1), (1, 2), (1, 3)]),
        (5, [(2, 0), (2, 1), (2, 3), (3, 4)]),
        (6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]),
    ]
    rng = random.Random(7)
    for n in (7, 9, 12, 15):
        heads = random_tree(n, rng)
        graphs.append((n, sorted((h - 1, d) for d, h in enumerate(heads) if h)))
    lines = ["# node_count\tedges (head>dependent, 0-based)\titerations\thash"]
    for n, edges in graphs:
        es = ";".join(f"{h}>{d}" for h, d in edges) or "-"
        for it in (1, 3):
            lines.append(f"{n}\t{es}\t{it}\t{wl_hash(n, edges, it)}")
    write(os.path.join(ROOT, "wl_golden.tsv"), "\n".join(lines) + "\n")


# --- templates ----------------------------------------------------------------

TEMPLATES = {
    "T1": ("Below is an instruction that describes a task, paired with an input that provides further context.\n"
           "Write a response that appropriately completes the request.\n\n"
           "### Instruction:\nWrite a short children's story given the title.\n\n"
           "### Input:\n{TITLE}\n\n### Response:\n"),
    "T2": ("Below is an instruction that describes a task. Write a response that appropriately completes the request.\n\n"
           "### Instruction:\nWrite a short children's story.\n\n### Response:\n"),
    "T3": ("Below is an instruction that describes a task, paired with an input that provides further context.\n"
           "Write a response that appropriately completes the request.\n\n"
           "### Instruction:\nWrite a children's story given the title.\n\n"
           "### Input:\n{TITLE}\n\n### Response:\n"),
    "T4": ("Below is an instruction that describes a task. Write a response that appropriately completes the request.\n\n"
           "### Instruction:\nWrite a children's story.\n\n### Response:\n"),
}


def make_prompts():
    repo = os.path.dirname(os.path.dirname(ROOT))
    for name, text in TEMPLATES.items():
        write(os.path.join(repo, "data", "templates", name + ".txt"), text)
        write(os.path.join(ROOT, "prompts", name + "_the_brave_cat.txt"),
              text.replace("{TITLE}", "The Brave Cat"))


if __name__ == "__main__":
    make_corpora()
    make_fifty()
    make_titles()
    make_golden()
    make_prompts()
