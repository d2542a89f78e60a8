"""Randomized brute-force verification of the algorithm suites.

Every operation family is checked against a naive oracle that reads the
operands element by element into plain dictionaries keyed by zero-based
multi-index and recomputes the operation with ordinary nested loops,
independent of the iterator recursion under test.  Trials randomize order,
extents, layout (uniform over all permutations), offsets (in [-2, 2]),
element kind, and whether each operand is a tensor or a strided view.

int64 trials draw small signed integers and compare exactly.  float64
trials draw positive values (uniform in [0.5, 2.0)) so that reductions,
whose summation order differs between the two routes, stay free of
cancellation and the relative-error bound is meaningful.

Randomness comes from :class:`random.Random` (Mersenne Twister), which is
platform-independent and string-seedable; each family runs on its own
stream seeded with ``"{seed}:{family}:{kind}"`` so failures reproduce in
isolation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import sqrt
from typing import Callable, Dict, List, Optional, Tuple

from . import contraction as ct
from . import elementwise as ew
from .tensor import DenseTensor
from .views import Range, TensorView

__all__ = ["RunConfig", "VerifyReport", "FamilyResult", "run_verification", "FAMILIES"]

FLOAT_RTOL = 1e-12


@dataclass
class RunConfig:
    """Knobs of one verification run."""

    seed: int = 42
    trials: int = 100
    max_order: int = 4
    max_extent: int = 5
    scalar_kind: str = "float64"
    output_path: Optional[str] = None
    json_report: bool = False
    inject_fault: bool = False  # test-only: corrupt the first comparison

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 1 <= self.max_order <= 6:
            raise ValueError("max_order must be in 1..6")
        if self.max_extent < 1:
            raise ValueError("max_extent must be >= 1")
        if self.scalar_kind not in ("int64", "float64"):
            raise ValueError(f"unknown scalar kind {self.scalar_kind!r}")


@dataclass
class FamilyResult:
    name: str
    trials: int
    passes: int
    failure: Optional[dict] = None


@dataclass
class VerifyReport:
    config: RunConfig
    families: List[FamilyResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(f.passes == f.trials for f in self.families)

    def to_text(self) -> str:
        lines = [
            f"verify seed={self.config.seed} trials={self.config.trials} "
            f"max-order={self.config.max_order} max-extent={self.config.max_extent} "
            f"scalar={self.config.scalar_kind}"
        ]
        for f in self.families:
            status = "pass" if f.passes == f.trials else "FAIL"
            lines.append(f"{f.name:<24} {f.passes}/{f.trials} {status}")
            if f.failure is not None:
                lines.append(
                    "  counterexample: " + json.dumps(f.failure, sort_keys=True)
                )
        total = sum(f.trials for f in self.families)
        bad = sum(f.trials - f.passes for f in self.families)
        lines.append(
            f"total: {len(self.families)} families, {total} trials, {bad} failures"
        )
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "seed": self.config.seed,
            "trials": self.config.trials,
            "max_order": self.config.max_order,
            "max_extent": self.config.max_extent,
            "scalar": self.config.scalar_kind,
            "ok": self.ok,
            "families": [
                {
                    "name": f.name,
                    "trials": f.trials,
                    "passes": f.passes,
                    "failure": f.failure,
                }
                for f in self.families
            ],
        }


# -- random instances -------------------------------------------------------


def _rand_shape(rng, cfg: RunConfig, min_order: int = 1) -> Tuple[int, ...]:
    p = rng.randint(min_order, cfg.max_order)
    return tuple(rng.randint(1, cfg.max_extent) for _ in range(p))


def _rand_layout(rng, p: int) -> Tuple[int, ...]:
    perm = list(range(1, p + 1))
    rng.shuffle(perm)
    return tuple(perm)


def _rand_offsets(rng, p: int) -> Tuple[int, ...]:
    return tuple(rng.randint(-2, 2) for _ in range(p))


def _rand_value(rng, kind: str):
    if kind == "int64":
        return rng.randint(-9, 9)
    return rng.uniform(0.5, 2.0)


def _rand_tensor(rng, shape, kind: str) -> DenseTensor:
    p = len(shape)
    t = DenseTensor(shape, _rand_offsets(rng, p), _rand_layout(rng, p))
    t.data = [_rand_value(rng, kind) for _ in range(t.size)]
    return t


def _rand_operand(rng, shape, kind: str):
    """A tensor of ``shape``, or a stepped view of that shape into a larger
    random parent."""
    if rng.random() < 0.5:
        return _rand_tensor(rng, shape, kind)
    p = len(shape)
    steps = [rng.randint(1, 2) for _ in range(p)]
    leads = [rng.randint(0, 1) for _ in range(p)]
    trails = [rng.randint(0, 1) for _ in range(p)]
    parent_shape = tuple(
        lead + t * (n - 1) + 1 + trail
        for n, t, lead, trail in zip(shape, steps, leads, trails)
    )
    parent = _rand_tensor(rng, parent_shape, kind)
    ranges = []
    for r in range(p):
        f = parent.offsets[r] + leads[r]
        ranges.append(Range(f, steps[r], f + steps[r] * (shape[r] - 1)))
    return TensorView(parent, ranges)


# -- oracle plumbing -----------------------------------------------------------

Box = Dict[Tuple[int, ...], object]


def _iter_indices(shape):
    """All zero-based multi-indices, dimension 1 fastest (iteration order)."""
    for rev in itertools.product(*[range(n) for n in reversed(shape)]):
        yield rev[::-1]


def read_box(x) -> Box:
    """Materialize an operand into a dict keyed by zero-based multi-index."""
    o = x.offsets
    out = {}
    for i in _iter_indices(x.shape):
        out[i] = x[tuple(a + b for a, b in zip(i, o))]
    return out


def _operand_json(x) -> dict:
    if isinstance(x, TensorView):
        d = x.materialize().to_dict()
        d["view"] = True
        return d
    return x.to_dict()


class _Comparator:
    """Result comparison with the per-kind tolerance; carries the
    test-only fault flag that corrupts exactly one comparison."""

    def __init__(self, kind: str, inject_fault: bool = False):
        self.kind = kind
        self.fault_pending = inject_fault

    def values_close(self, expected, got) -> bool:
        if self.fault_pending:
            self.fault_pending = False
            return False
        if self.kind == "int64":
            return expected == got
        if expected == got:
            return True
        return abs(expected - got) <= FLOAT_RTOL * max(abs(expected), abs(got))

    def check_value(self, expected, got, context: dict) -> Optional[dict]:
        if self.values_close(expected, got):
            return None
        return dict(context, expected=repr(expected), got=repr(got))

    def check_box(self, expected: Box, shape, got_reader, context: dict):
        """Compare an expected box against a readable result object."""
        if tuple(shape) != tuple(got_reader.shape):
            return dict(
                context,
                expected_shape=list(shape),
                got_shape=list(got_reader.shape),
            )
        o = got_reader.offsets
        for i in _iter_indices(shape):
            got = got_reader[tuple(a + b for a, b in zip(i, o))]
            bad = self.check_value(expected[i], got, context)
            if bad is not None:
                bad["index"] = list(i)
                return bad
        return None


# -- elementwise families ---------------------------------------------------------


def _check_for_each(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    x = _rand_operand(rng, shape, cfg.scalar_kind)
    before = read_box(x)
    alpha = _rand_value(rng, cfg.scalar_kind)
    ew.for_each(x, lambda v: v * 2 + alpha)
    expected = {i: v * 2 + alpha for i, v in before.items()}
    return cmp.check_box(expected, shape, x, {"op": "for_each"})


def _check_transform_unary(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    src = _rand_operand(rng, shape, cfg.scalar_kind)
    dst = _rand_operand(rng, shape, cfg.scalar_kind)
    alpha = _rand_value(rng, cfg.scalar_kind)
    box = read_box(src)
    ew.transform_unary(src, dst, lambda v: v * alpha)
    expected = {i: v * alpha for i, v in box.items()}
    ctx = {"op": "transform_unary", "src": _operand_json(src)}
    return cmp.check_box(expected, shape, dst, ctx)


def _check_transform_binary(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    a = _rand_operand(rng, shape, cfg.scalar_kind)
    b = _rand_operand(rng, shape, cfg.scalar_kind)
    dst = _rand_operand(rng, shape, cfg.scalar_kind)
    ops = {"add": lambda x, y: x + y, "mul": lambda x, y: x * y}
    if cfg.scalar_kind == "int64":
        ops["sub"] = lambda x, y: x - y
    name = rng.choice(sorted(ops))
    op = ops[name]
    ba, bb = read_box(a), read_box(b)
    ew.transform_binary(a, b, dst, op)
    expected = {i: op(ba[i], bb[i]) for i in ba}
    ctx = {"op": f"transform_binary[{name}]", "a": _operand_json(a)}
    return cmp.check_box(expected, shape, dst, ctx)


def _check_copy(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    src = _rand_operand(rng, shape, cfg.scalar_kind)
    dst = _rand_operand(rng, shape, cfg.scalar_kind)
    box = read_box(src)
    ew.copy(src, dst)
    return cmp.check_box(box, shape, dst, {"op": "copy"})


def _check_copy_if(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    src = _rand_operand(rng, shape, cfg.scalar_kind)
    dst = _rand_operand(rng, shape, cfg.scalar_kind)
    threshold = 0 if cfg.scalar_kind == "int64" else 1.0
    pred = lambda v: v > threshold
    bs, bd = read_box(src), read_box(dst)
    ew.copy_if(src, dst, pred)
    expected = {i: (bs[i] if pred(bs[i]) else bd[i]) for i in bs}
    return cmp.check_box(expected, shape, dst, {"op": "copy_if"})


def _check_fill(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    dst = _rand_operand(rng, shape, cfg.scalar_kind)
    v = _rand_value(rng, cfg.scalar_kind)
    ew.fill(dst, v)
    expected = {i: v for i in _iter_indices(shape)}
    return cmp.check_box(expected, shape, dst, {"op": "fill"})


def _check_generate(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    dst = _rand_operand(rng, shape, cfg.scalar_kind)
    start = rng.randint(0, 5)
    counter = itertools.count(start)
    ew.generate(dst, lambda: next(counter))
    expected = {i: k for k, i in enumerate(_iter_indices(shape), start=start)}
    return cmp.check_box(expected, shape, dst, {"op": "generate"})


def _check_iota(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    dst = _rand_operand(rng, shape, cfg.scalar_kind)
    start = rng.randint(-3, 3)
    ew.iota(dst, start)
    expected = {i: k for k, i in enumerate(_iter_indices(shape), start=start)}
    return cmp.check_box(expected, shape, dst, {"op": "iota"})


def _check_count(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    x = _rand_operand(rng, shape, cfg.scalar_kind)
    box = read_box(x)
    needle = rng.choice(sorted(box.values(), key=repr))
    got = ew.count_matching(x, value=needle)
    expected = sum(1 for v in box.values() if v == needle)
    bad = cmp.check_value(expected, got, {"op": "count_matching[value]"})
    if bad is not None:
        return bad
    threshold = 0 if cfg.scalar_kind == "int64" else 1.0
    got = ew.count_matching(x, pred=lambda v: v <= threshold)
    expected = sum(1 for v in box.values() if v <= threshold)
    return cmp.check_value(expected, got, {"op": "count_matching[pred]"})


def _check_extremum(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    x = _rand_operand(rng, shape, cfg.scalar_kind)
    box = read_box(x)
    for kind, better in (("min", lambda v, b: v < b), ("max", lambda v, b: v > b)):
        best_i, best_v = None, None
        for i in _iter_indices(shape):
            if best_i is None or better(box[i], best_v):
                best_i, best_v = i, box[i]
        got_i, got_v = ew.extremum_element(x, kind)
        if got_i != best_i or got_v != best_v:
            return {
                "op": f"extremum_element[{kind}]",
                "expected": [list(best_i), repr(best_v)],
                "got": [list(got_i), repr(got_v)],
            }
    return None


def _check_find(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    x = _rand_operand(rng, shape, cfg.scalar_kind)
    box = read_box(x)
    needle = rng.choice(sorted(box.values(), key=repr))
    expected = next(i for i in _iter_indices(shape) if box[i] == needle)
    got = ew.find_first(x, value=needle)
    if got != expected:
        return {
            "op": "find_first[present]",
            "expected": list(expected),
            "got": None if got is None else list(got),
        }
    absent = 10**6 if cfg.scalar_kind == "int64" else -1.0
    if ew.find_first(x, value=absent) is not None:
        return {"op": "find_first[absent]", "expected": None}
    return None


def _check_compare(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    a = _rand_operand(rng, shape, cfg.scalar_kind)
    b = _rand_operand(rng, shape, cfg.scalar_kind)
    ew.copy(a, b)
    res = ew.compare_ranges(a, b)
    if not res.equal or res.first_mismatch is not None:
        return {"op": "compare_ranges[equal]", "got": str(res)}
    box = read_box(a)
    victim = rng.choice(sorted(box))
    o = b.offsets
    b[tuple(i + c for i, c in zip(victim, o))] = box[victim] + 1
    bb = read_box(b)
    expected = next(i for i in _iter_indices(shape) if box[i] != bb[i])
    res = ew.compare_ranges(a, b)
    if res.equal or res.first_mismatch != expected:
        return {
            "op": "compare_ranges[mismatch]",
            "expected": list(expected),
            "got": str(res),
        }
    return None


def _check_quantify(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    x = _rand_operand(rng, shape, cfg.scalar_kind)
    box = read_box(x)
    threshold = rng.randint(-9, 9) if cfg.scalar_kind == "int64" else rng.uniform(0.5, 2.0)
    pred = lambda v: v >= threshold
    hits = [v for v in box.values() if pred(v)]
    expect = {"all": len(hits) == len(box), "any": bool(hits), "none": not hits}
    for mode, exp in expect.items():
        if ew.quantify(x, pred, mode) != exp:
            return {"op": f"quantify[{mode}]", "expected": exp}
    return None


def _check_accumulate(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    x = _rand_operand(rng, shape, cfg.scalar_kind)
    box = read_box(x)
    init = _rand_value(rng, cfg.scalar_kind)
    got = ew.accumulate(x, init)
    expected = init
    for i in _iter_indices(shape):
        expected = expected + box[i]
    return cmp.check_value(expected, got, {"op": "accumulate"})


def _check_inner_flat(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    a = _rand_operand(rng, shape, cfg.scalar_kind)
    b = _rand_operand(rng, shape, cfg.scalar_kind)
    ba, bb = read_box(a), read_box(b)
    init = _rand_value(rng, cfg.scalar_kind)
    got = ew.inner_product_flat(a, b, init)
    expected = init
    for i in _iter_indices(shape):
        expected += ba[i] * bb[i]
    return cmp.check_value(expected, got, {"op": "inner_product_flat"})


# -- contraction oracles -----------------------------------------------------------


def oracle_transpose(box: Box, shape, tau) -> Tuple[Box, Tuple[int, ...]]:
    out_shape = tuple(shape[t - 1] for t in tau)
    out = {}
    for ic in _iter_indices(out_shape):
        ia = [0] * len(shape)
        for r, t in enumerate(tau):
            ia[t - 1] = ic[r]
        out[ic] = box[tuple(ia)]
    return out, out_shape


def oracle_ttv(box: Box, shape, bvals, m: int) -> Tuple[Box, Tuple[int, ...]]:
    out_shape = shape[: m - 1] + shape[m:]
    out = {}
    for ic in _iter_indices(out_shape):
        acc = 0
        for k in range(shape[m - 1]):
            acc += box[ic[: m - 1] + (k,) + ic[m - 1 :]] * bvals[k]
        out[ic] = acc
    return out, out_shape


def oracle_ttm(box: Box, shape, bbox: Box, bshape, m: int):
    out_shape = shape[: m - 1] + (bshape[0],) + shape[m:]
    out = {}
    for ic in _iter_indices(out_shape):
        acc = 0
        j = ic[m - 1]
        for k in range(shape[m - 1]):
            acc += box[ic[: m - 1] + (k,) + ic[m:]] * bbox[(j, k)]
        out[ic] = acc
    return out, out_shape


def oracle_ttt(boxa: Box, na, boxb: Box, nb, q, phi, psi):
    r, s = len(na) - q, len(nb) - q
    out_shape = tuple(na[phi[k] - 1] for k in range(r)) + tuple(
        nb[psi[k] - 1] for k in range(s)
    )
    bounds = [na[phi[r + k] - 1] for k in range(q)]
    out = {}
    for ic in _iter_indices(out_shape or (1,)):
        acc = 0
        for jt in itertools.product(*[range(b) for b in bounds]):
            ia = [0] * len(na)
            ib = [0] * len(nb)
            for k in range(r):
                ia[phi[k] - 1] = ic[k]
            for k in range(s):
                ib[psi[k] - 1] = ic[r + k]
            for k in range(q):
                ia[phi[r + k] - 1] = jt[k]
                ib[psi[s + k] - 1] = jt[k]
            acc += boxa[tuple(ia)] * boxb[tuple(ib)]
        out[ic] = acc
    return out, (out_shape or (1,))


# -- contraction families -------------------------------------------------------------


def _check_transpose(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    x = _rand_operand(rng, shape, cfg.scalar_kind)
    tau = list(range(1, len(shape) + 1))
    rng.shuffle(tau)
    got = ct.transpose(x, tau)
    expected, out_shape = oracle_transpose(read_box(x), shape, tau)
    ctx = {"op": "transpose", "tau": tau, "a": _operand_json(x)}
    return cmp.check_box(expected, out_shape, got, ctx)


def _check_ttv(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg, min_order=2)
    a = _rand_operand(rng, shape, cfg.scalar_kind)
    m = rng.randint(1, len(shape))
    b = _rand_operand(rng, (shape[m - 1],), cfg.scalar_kind)
    got = ct.ttv(a, b, m)
    bvals = [read_box(b)[(k,)] for k in range(shape[m - 1])]
    expected, out_shape = oracle_ttv(read_box(a), shape, bvals, m)
    ctx = {"op": "ttv", "mode": m, "a": _operand_json(a), "b": _operand_json(b)}
    return cmp.check_box(expected, out_shape, got, ctx)


def _check_ttm(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg, min_order=2)
    a = _rand_operand(rng, shape, cfg.scalar_kind)
    m = rng.randint(1, len(shape))
    n_new = rng.randint(1, cfg.max_extent)
    b = _rand_operand(rng, (n_new, shape[m - 1]), cfg.scalar_kind)
    got = ct.ttm(a, b, m)
    expected, out_shape = oracle_ttm(
        read_box(a), shape, read_box(b), b.shape, m
    )
    ctx = {"op": "ttm", "mode": m, "a": _operand_json(a), "b": _operand_json(b)}
    return cmp.check_box(expected, out_shape, got, ctx)


def _rand_ttt_instance(rng, cfg):
    pa = rng.randint(1, cfg.max_order)
    q = rng.randint(0, pa)
    r = pa - q
    s_min = 0 if q else 1
    s = rng.randint(s_min, max(s_min, cfg.max_order - q))
    pb = q + s
    na = tuple(rng.randint(1, cfg.max_extent) for _ in range(pa))
    phi = list(range(1, pa + 1))
    rng.shuffle(phi)
    psi = list(range(1, pb + 1))
    rng.shuffle(psi)
    nb = [0] * pb
    for k in range(s):
        nb[psi[k] - 1] = rng.randint(1, cfg.max_extent)
    for k in range(q):
        nb[psi[s + k] - 1] = na[phi[r + k] - 1]
    return na, tuple(nb), ct.ContractionSpec(q, tuple(phi), tuple(psi))


def _check_ttt(rng, cfg, cmp):
    na, nb, spec = _rand_ttt_instance(rng, cfg)
    a = _rand_operand(rng, na, cfg.scalar_kind)
    b = _rand_operand(rng, nb, cfg.scalar_kind)
    got = ct.ttt(a, b, spec)
    expected, out_shape = oracle_ttt(
        read_box(a), na, read_box(b), nb, spec.q, spec.phi, spec.psi
    )
    ctx = {
        "op": "ttt",
        "q": spec.q,
        "phi": list(spec.phi),
        "psi": list(spec.psi),
        "a": _operand_json(a),
        "b": _operand_json(b),
    }
    return cmp.check_box(expected, out_shape, got, ctx)


def _check_outer(rng, cfg, cmp):
    na = _rand_shape(rng, cfg)
    nb = _rand_shape(rng, cfg)
    if len(na) + len(nb) > 6:
        nb = nb[: 6 - len(na)] or (rng.randint(1, cfg.max_extent),)
    a = _rand_operand(rng, na, cfg.scalar_kind)
    b = _rand_operand(rng, nb, cfg.scalar_kind)
    got = ct.outer_product(a, b)
    ba, bb = read_box(a), read_box(b)
    out_shape = na + nb
    expected = {}
    for ic in _iter_indices(out_shape):
        expected[ic] = ba[ic[: len(na)]] * bb[ic[len(na) :]]
    ctx = {"op": "outer_product", "a": _operand_json(a), "b": _operand_json(b)}
    return cmp.check_box(expected, out_shape, got, ctx)


def _check_inner(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    a = _rand_operand(rng, shape, cfg.scalar_kind)
    b = _rand_operand(rng, shape, cfg.scalar_kind)
    got = ct.inner_product_tensors(a, b)
    ba, bb = read_box(a), read_box(b)
    expected = 0
    for i in _iter_indices(shape):
        expected += ba[i] * bb[i]
    return cmp.check_value(expected, got, {"op": "inner_product_tensors"})


def _check_norm(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg)
    a = _rand_operand(rng, shape, "float64")
    got = ct.frobenius_norm(a)
    expected = sqrt(sum(v * v for v in read_box(a).values()))
    saved = cmp.kind
    cmp.kind = "float64"  # norm is float-valued even for integer elements
    bad = cmp.check_value(expected, got, {"op": "frobenius_norm"})
    cmp.kind = saved
    return bad


def _check_times_vectors(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg, min_order=2)
    p = len(shape)
    k = rng.randint(1, p)
    modes = sorted(rng.sample(range(1, p + 1), k))
    a = _rand_operand(rng, shape, cfg.scalar_kind)
    vecs = [
        _rand_operand(rng, (shape[m - 1],), cfg.scalar_kind) for m in modes
    ]
    got = ct.times_vectors(a, vecs, modes)
    box, cur_shape = read_box(a), shape
    for m, v in sorted(zip(modes, vecs), reverse=True, key=lambda x: x[0]):
        bvals = [read_box(v)[(j,)] for j in range(cur_shape[m - 1])]
        box, cur_shape = oracle_ttv(box, cur_shape, bvals, m)
    out_shape = cur_shape or (1,)
    if not cur_shape:
        box = {(0,): box[()]}
    ctx = {"op": "times_vectors", "modes": modes}
    return cmp.check_box(box, out_shape, got, ctx)


def _check_times_matrices(rng, cfg, cmp):
    shape = _rand_shape(rng, cfg, min_order=2)
    p = len(shape)
    k = rng.randint(1, p)
    modes = sorted(rng.sample(range(1, p + 1), k))
    a = _rand_operand(rng, shape, cfg.scalar_kind)
    mats = [
        _rand_operand(
            rng, (rng.randint(1, cfg.max_extent), shape[m - 1]), cfg.scalar_kind
        )
        for m in modes
    ]
    got = ct.times_matrices(a, mats, modes)
    box, cur_shape = read_box(a), shape
    for m, bmat in sorted(zip(modes, mats), reverse=True, key=lambda x: x[0]):
        box, cur_shape = oracle_ttm(box, cur_shape, read_box(bmat), bmat.shape, m)
    ctx = {"op": "times_matrices", "modes": modes}
    return cmp.check_box(box, cur_shape, got, ctx)


# -- driver -------------------------------------------------------------------------

FAMILIES: List[Tuple[str, Callable]] = [
    ("for_each", _check_for_each),
    ("transform_unary", _check_transform_unary),
    ("transform_binary", _check_transform_binary),
    ("copy", _check_copy),
    ("copy_if", _check_copy_if),
    ("fill", _check_fill),
    ("generate", _check_generate),
    ("iota", _check_iota),
    ("count_matching", _check_count),
    ("extremum_element", _check_extremum),
    ("find_first", _check_find),
    ("compare_ranges", _check_compare),
    ("quantify", _check_quantify),
    ("accumulate", _check_accumulate),
    ("inner_product_flat", _check_inner_flat),
    ("transpose", _check_transpose),
    ("ttv", _check_ttv),
    ("ttm", _check_ttm),
    ("ttt", _check_ttt),
    ("outer_product", _check_outer),
    ("inner_product_tensors", _check_inner),
    ("frobenius_norm", _check_norm),
    ("times_vectors", _check_times_vectors),
    ("times_matrices", _check_times_matrices),
]


def run_verification(cfg: RunConfig) -> VerifyReport:
    """Run every family for ``cfg.trials`` trials; see module docstring."""
    import random

    report = VerifyReport(config=cfg)
    fault_left = cfg.inject_fault
    for name, check in FAMILIES:
        rng = random.Random(f"{cfg.seed}:{name}:{cfg.scalar_kind}")
        cmp = _Comparator(cfg.scalar_kind)
        passes = 0
        failure = None
        for trial in range(cfg.trials):
            if fault_left:
                cmp.fault_pending = True
                fault_left = False
            bad = check(rng, cfg, cmp)
            if bad is None:
                passes += 1
            elif failure is None:
                failure = dict(bad, trial=trial)
        report.families.append(FamilyResult(name, cfg.trials, passes, failure))
    return report
