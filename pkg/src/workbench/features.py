"""Fixed-width lemma feature vectors, scaled into [0, 1] as they are built.

Layout for ``steps_k = K`` (width ``4 + 4K``)::

    statement: quantifiers, has '=', token count, head-symbol rank
    step i:    family of first atom, argument count,
               lemma-reference ratio, atom count

Counts are capped and divided by their cap; proofs longer than K steps
are truncated, shorter ones zero-padded. Values are rounded to six
decimals, the precision of the CSV format.
"""

import csv
import io
import re
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .errors import CsvFormatError, EmptySymbolTable
from .parser import FAMILIES, QUANTIFIERS, head_symbol, is_ident

_IDENT_FIND = re.compile(r"[\\']?[A-Za-z_][A-Za-z0-9_']*(?:\.[A-Za-z_][A-Za-z0-9_']*)*")


@dataclass(frozen=True)
class ExtractionConfig:
    steps_k: int = 5
    arg_cap: int = 8
    compose_cap: int = 8
    quant_cap: int = 8
    len_cap: int = 64

    def __post_init__(self):
        for name in ("steps_k", "arg_cap", "compose_cap", "quant_cap", "len_cap"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    @property
    def width(self):
        return 4 + 4 * self.steps_k


@dataclass
class FeatureTable:
    names: list
    matrix: np.ndarray
    config: ExtractionConfig = field(default_factory=ExtractionConfig)

    @property
    def width(self):
        return self.matrix.shape[1]

    def __len__(self):
        return len(self.names)


def corpus_symbols(corpus):
    """Sorted, de-duplicated identifiers of a corpus (quantifiers excluded)."""
    syms = set()
    for lem in corpus.lemmas:
        syms.add(lem.name)
        syms.update(t for t in lem.statement if is_ident(t))
        for step in lem.steps:
            for atom in step.atoms:
                for arg in atom.args:
                    syms.update(_IDENT_FIND.findall(arg.text))
    return sorted(syms - QUANTIFIERS)


def extract_lemma(lemma, symbols, cfg=ExtractionConfig()):
    if not symbols:
        raise EmptySymbolTable("symbol table is empty")
    st = lemma.statement
    quants = sum(1 for t in st if t in QUANTIFIERS)
    head = head_symbol(st)
    rank = 0.0
    if head is not None:
        k = bisect_left(symbols, head)
        if k < len(symbols) and symbols[k] == head:
            rank = (k + 1) / len(symbols)
    vec = [
        min(quants, cfg.quant_cap) / cfg.quant_cap,
        1.0 if "=" in st else 0.0,
        min(len(st), cfg.len_cap) / cfg.len_cap,
        rank,
    ]
    for i in range(cfg.steps_k):
        if i >= len(lemma.steps):
            vec.extend((0.0, 0.0, 0.0, 0.0))
            continue
        atoms = lemma.steps[i].atoms
        args = [a for atom in atoms for a in atom.args]
        refs = sum(1 for a in args if a.kind == "lemma")
        vec.extend((
            (FAMILIES.index(atoms[0].family) + 1) / len(FAMILIES),
            min(len(args), cfg.arg_cap) / cfg.arg_cap,
            refs / max(len(args), 1),
            min(len(atoms), cfg.compose_cap) / cfg.compose_cap,
        ))
    # quantize to the CSV precision so files round-trip without loss
    return np.array([round(v, 6) for v in vec], dtype=float)


def extract_corpus(corpus, cfg=ExtractionConfig()):
    names = corpus.names()
    if not names:
        return FeatureTable([], np.zeros((0, cfg.width)), cfg)
    symbols = corpus_symbols(corpus)
    rows = [extract_lemma(lem, symbols, cfg) for lem in corpus.lemmas]
    return FeatureTable(names, np.vstack(rows), cfg)


def write_features(table):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lemma"] + [f"f{j + 1}" for j in range(table.width)])
    for name, row in zip(table.names, table.matrix):
        w.writerow([name] + [f"{v:.6f}" for v in row])
    return buf.getvalue()


def read_features(text):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise CsvFormatError(1, "missing header")
    header = rows[0]
    d = len(header) - 1
    if header[0] != "lemma" or header[1:] != [f"f{j + 1}" for j in range(d)]:
        raise CsvFormatError(1, "header must be 'lemma,f1,...,fd'")
    names, values, seen = [], [], set()
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != d + 1:
            raise CsvFormatError(lineno, f"expected {d + 1} fields, got {len(row)}")
        try:
            vals = [float(x) for x in row[1:]]
        except ValueError:
            raise CsvFormatError(lineno, "non-numeric feature value") from None
        if not all(0.0 <= v <= 1.0 for v in vals):
            raise CsvFormatError(lineno, "feature value outside [0, 1]")
        if row[0] in seen:
            raise CsvFormatError(lineno, f"duplicate lemma {row[0]!r}")
        seen.add(row[0])
        names.append(row[0])
        values.append(vals)
    steps_k = (d - 4) // 4
    cfg = ExtractionConfig(steps_k=steps_k) if d >= 8 and (d - 4) % 4 == 0 else None
    matrix = np.array(values, dtype=float).reshape(len(values), d)
    return FeatureTable(names, matrix, cfg)
