"""Synthetic ``.vp`` corpus with planted proof-pattern families.

The default corpus has 120 lemmas: a 4-lemma refinement family whose
proofs all follow "induct, apply the morphism lemma, then rewrite with
translation lemmas", five larger families with their own skeletons, and
20 unstructured noise lemmas. Lemmas are shuffled across files with a
seeded RNG; the same spec always produces byte-identical files.
"""

import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FixtureError

REFINEMENT_FAMILY = ("cfast_invmxP", "rank_elim_seqmxE", "fast_mult_seqmxP", "det_seqmxP")

# library lemmas every generated file imports
IMPORTS = (
    "seqmx0", "seqmx_of_mxK", "seqmx_morphism", "mulseqmxE", "addseqmxE",
    "subseqmxE", "oppseqmxE", "block_seqmxE", "usubseqmxE", "dsubseqmxE",
    "lsubseqmxE", "rsubseqmxE", "xrowseqmxE", "scaleseqmxE", "pivotseqmxE",
    "addrC", "addrA", "mulrA", "mulrC", "mulr1", "mul1r", "addr0", "add0r",
    "mulmxA", "mulmxDl", "mulmxDr", "mul1mx", "mulmx1", "trmx_mul",
    "big_ord_recl", "big_ord_recr", "big_split", "eq_bigr", "big1",
    "leq_trans", "ltnW", "subnK", "addnS", "eqxx", "andbT",
)

_REFINEMENT_STATEMENTS = {
    "cfast_invmxP": "forall (n : nat) (M : 'M_n), seqmx_of_mx (fast_invmx M) = cfast_invmx (seqmx_of_mx M)",
    "rank_elim_seqmxE": "forall (n : nat) (M : 'M_n), rank_elim_seqmx (seqmx_of_mx M) = rank_elim M",
    "fast_mult_seqmxP": "forall (n : nat) (M N : 'M_n), seqmx_of_mx (fast_mult M N) = fast_mult_seqmx (seqmx_of_mx M) (seqmx_of_mx N)",
    "det_seqmxP": "forall (n : nat) (M : 'M_n), det_seqmx (seqmx_of_mx M) = det_mx M",
}

_TRANSLATIONS = {
    "cfast_invmxP": ("block_seqmxE", "mulseqmxE", "oppseqmxE", "usubseqmxE"),
    "rank_elim_seqmxE": ("xrowseqmxE", "pivotseqmxE", "subseqmxE", "dsubseqmxE"),
    "fast_mult_seqmxP": ("addseqmxE", "subseqmxE", "mulseqmxE", "block_seqmxE"),
    "det_seqmxP": ("pivotseqmxE", "scaleseqmxE", "rsubseqmxE", "lsubseqmxE"),
}


def _refinement(rng, name, k, earlier):
    t1, t2, t3, t4 = _TRANSLATIONS[name]
    steps = [
        "elim: n M => [|n IHn] M.",
        "by rewrite seqmx0.",
        "rewrite -[M]seqmx_of_mxK seqmx_morphism.",
        f"rewrite {t1} {t2} {t3} {t4}.",
        "by rewrite IHn; exact: seqmx_of_mxK.",
    ]
    return _REFINEMENT_STATEMENTS[name], steps


def _pick(rng, pool, k):
    return [rng.choice(pool) for _ in range(k)]


_RING = ("addrC", "addrA", "mulrA", "mulrC", "mulr1", "mul1r", "addr0", "add0r")


def _ring_laws(rng, name, k, earlier):
    x, y, z = _pick(rng, ("a", "b", "c", "x", "y"), 3)
    op = rng.choice(("+", "*"))
    stmt = f"forall ({x} {y} {z} : R), {x} {op} ({y} {op} {z}) = ({x} {op} {y}) {op} {z}"
    steps = [
        f"move=> {x} {y} {z}.",
        f"by rewrite {' '.join(_pick(rng, _RING, rng.randint(1, 2)))}.",
    ]
    return stmt, steps


def _size_induction(rng, name, k, earlier):
    op = rng.choice(("trmx", "castmx", "row_perm", "col_perm"))
    stmt = f"forall (n : nat) (A : 'M_n), {op} ({op} A) = A"
    steps = [
        "elim: n A => [|n IHn] A.",
        f"by rewrite {rng.choice(('thinmx0', 'flatmx0'))}.",
        "case: (ubnP n) => m.",
        f"move=> {' '.join(_pick(rng, ('Hm', 'Hn', 'le_mn'), rng.randint(1, 2)))}.",
        f"by apply: IHn; rewrite {rng.choice(('leq_trans', 'ltnW'))}.",
    ]
    return stmt, steps


def _apply_chain(rng, name, k, earlier):
    p = rng.choice(("P", "Q"))
    stmt = f"forall (m : nat) (H : {p} m), exists i, {rng.choice(('ord_rel', 'pred_rel'))} i m"
    prev = [e for e in earlier if e.startswith("ord_chain")]
    target = prev[-1] if prev else "leq_trans"
    steps = [
        "move=> m H.",
        f"apply: {target}.",
        f"apply: {rng.choice(('ltnW', 'eqxx'))}.",
        f"exact: ({rng.choice(('ltnW', 'subnK'))} H).",
    ]
    return stmt, steps


def _case_split(rng, name, k, earlier):
    stmt = f"forall (b c : bool), {rng.choice(('andb', 'orb', 'xorb'))} b c = {rng.choice(('andb', 'orb'))} c b"
    steps = [
        "case: b.",
        "case: c.",
        "split.",
        "have H : c = c.",
        rng.choice(("done.", "by case: c.")),
    ]
    return stmt, steps


def _big_ops(rng, name, k, earlier):
    f = rng.choice(("F", "G"))
    stmt = f"forall (n : nat) ({f} : 'I_n -> R), \\sum_(i < n) {f} i = \\sum_(i < n) {f} (rev_ord i)"
    big = ("big_ord_recl", "big_ord_recr", "big_split", "eq_bigr", "big1")
    steps = [
        f"rewrite {' '.join(_pick(rng, big, rng.randint(2, 4)))}.",
        f"rewrite {' '.join(_pick(rng, big, rng.randint(2, 4)))}.",
        f"apply: eq_bigr => i _; rewrite {rng.choice(_RING)}.",
        f"by rewrite {rng.choice(_RING)}.",
    ]
    return stmt, steps


_TACTICS = ("move=>", "case:", "elim:", "apply:", "rewrite", "exact:", "by", "have", "split", "done", "congr")
_NOISE_WORDS = ("x", "y", "H", "Hx", "IH", "u", "v", "mulrA", "addrC", "eqxx", "andbT", "p", "q")


def _noise(rng, name, k, earlier):
    head = rng.choice(("foo", "bar", "baz", "qux", "zap", "lift", "drop", "join"))
    stmt = f"forall (x y : T), {head} x y = {head} y x" if rng.random() < 0.6 else f"{head} (x y)"
    steps = []
    for _ in range(rng.randint(1, 3)):
        parts = []
        for _ in range(rng.randint(1, 2)):
            tac = rng.choice(_TACTICS)
            if tac == "by":
                tac = "by rewrite"
            parts.append(" ".join([tac] + _pick(rng, _NOISE_WORDS, rng.randint(0, 4))))
        steps.append("; ".join(parts) + ".")
    return stmt, steps


TEMPLATES = {
    "refinement": _refinement,
    "ring_laws": _ring_laws,
    "size_induction": _size_induction,
    "apply_chain": _apply_chain,
    "case_split": _case_split,
    "big_ops": _big_ops,
    "noise": _noise,
}

_STEMS = {
    "ring_laws": "ring_law",
    "size_induction": "size_ind",
    "apply_chain": "ord_chain",
    "case_split": "bool_case",
    "big_ops": "big_rev",
    "noise": "aux",
}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    members: int
    template: str


@dataclass(frozen=True)
class FixtureSpec:
    families: tuple = field(default_factory=lambda: (
        FamilySpec("refinement", 4, "refinement"),
        FamilySpec("ring_laws", 20, "ring_laws"),
        FamilySpec("size_induction", 19, "size_induction"),
        FamilySpec("apply_chain", 19, "apply_chain"),
        FamilySpec("case_split", 19, "case_split"),
        FamilySpec("big_ops", 19, "big_ops"),
    ))
    noise: int = 20
    seed: int = 0
    files: int = 6

    def validate(self):
        names = [f.name for f in self.families]
        if len(set(names)) != len(names):
            raise FixtureError("family names must be unique")
        for fam in self.families:
            if fam.members < 1:
                raise FixtureError(f"family {fam.name!r} needs at least one member")
            if fam.template not in TEMPLATES:
                raise FixtureError(f"family {fam.name!r}: unknown template {fam.template!r}")
        refine = [f for f in self.families if f.template == "refinement"]
        if len(refine) != 1 or refine[0].members != len(REFINEMENT_FAMILY):
            raise FixtureError("exactly one refinement family of 4 members is required")
        if self.noise < 0 or self.files < 1:
            raise FixtureError("noise must be >= 0 and files >= 1")
        if self.total < 30:
            raise FixtureError(f"corpus would hold {self.total} lemmas; at least 30 required")

    @property
    def total(self):
        return sum(f.members for f in self.families) + self.noise


def with_family_sizes(sizes, noise=20, seed=0, files=6):
    """Default families with the five non-refinement sizes replaced."""
    base = FixtureSpec().families
    if len(sizes) != len(base) - 1:
        raise FixtureError(f"expected {len(base) - 1} family sizes, got {len(sizes)}")
    fams = (base[0],) + tuple(FamilySpec(f.name, s, f.template) for f, s in zip(base[1:], sizes))
    return FixtureSpec(fams, noise, seed, files)


def generate(spec=FixtureSpec()):
    """Return ``[(file_name, text), ...]`` for the synthetic corpus."""
    spec.validate()
    rng = random.Random(spec.seed)
    slots = []
    for fam in spec.families:
        if fam.template == "refinement":
            slots.extend((fam.template, name) for name in REFINEMENT_FAMILY)
        else:
            stem = _STEMS.get(fam.template, fam.name)
            slots.extend((fam.template, f"{stem}_{k}") for k in range(fam.members))
    slots.extend(("noise", f"aux_{k}") for k in range(spec.noise))
    rng.shuffle(slots)

    per_file = -(-len(slots) // spec.files)
    header = "Require Import " + " ".join(IMPORTS) + ".\n"
    files = []
    earlier = []
    for f in range(spec.files):
        chunk = slots[f * per_file:(f + 1) * per_file]
        if not chunk:
            break
        parts = [f"(* generated fixture file {f + 1} *)\n", header]
        for template, name in chunk:
            stmt, steps = TEMPLATES[template](rng, name, len(earlier), earlier)
            body = "\n".join("  " + s for s in steps)
            parts.append(f"\nLemma {name} : {stmt}.\nProof.\n{body}\nQed.\n")
            earlier.append(name)
        files.append((f"lib{f + 1:02d}.vp", "".join(parts)))
    return files


def write_fixtures(out_dir, spec=FixtureSpec()):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in generate(spec):
        path = out / name
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written
