"""Lowest weight vectors, harmonic decompositions and the spo(2|2) decomposition of K."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .coxeter import CharacterTable, assumption_check, n_c, resolve_label
from .linalg import Vector, in_span, nullspace, rank, rref, reduce_against, span_basis
from .module import KModule, vector_json, format_key
from .spo import (
    TYPES,
    b_set,
    classify_lw_vector,
    generated_dims,
    generated_vectors,
    hook_lambda,
    lw_type_dims,
    predicted_type,
    weight_of,
)
from .errors import TruncationTooSmall


def joint_kernel(module: KModule, m: int, l: int, names) -> List[Vector]:
    """Basis of the common kernel of the named generators on block (m, l)."""
    keys = module.block(m, l)
    if not keys:
        return []
    ops = [module.generator(n) for n in names]
    cols = []
    for k in keys:
        col = {}
        for idx, op in enumerate(ops):
            for t, v in op.column(k).items():
                col[(idx, t)] = v
        cols.append(col)
    kern = nullspace(cols)
    return span_basis([{keys[j]: v for j, v in vec.items()} for vec in kern])


def lowest_weight_block(module: KModule, m: int, l: int) -> List[Vector]:
    return joint_kernel(module, m, l, ("E1-", "E2-", "E3-"))


@dataclass
class LwTable:
    """Lowest weight spaces M^l_m(sigma) for blocks with m + 2 <= N."""

    n: int
    spaces: Dict[Tuple[int, int], List[Vector]]
    isotypic: Dict[Tuple[int, int, str], List[Vector]]
    assumption: object = None

    def dims(self) -> Dict[Tuple[int, int, str], int]:
        return {k: len(v) for k, v in self.isotypic.items() if v}

    def block_dims(self) -> Dict[Tuple[int, int], int]:
        return {k: len(v) for k, v in self.spaces.items() if v}


def lowest_weight_spaces(module: KModule, n: int, max_total: Optional[int] = None) -> LwTable:
    """Compute M^l_m(sigma) on every block with m <= N-2 (and m + l <= max_total if given)."""
    table = module._table()
    try:
        verdict = assumption_check(module.rs, module.c, module.tau.label, table)
    except Exception:
        verdict = None
    spaces = {}
    iso = {}
    for m in range(0, n - 1):
        for l in range(module.r + 1):
            if max_total is not None and m + l > max_total:
                continue
            basis = lowest_weight_block(module, m, l)
            spaces[(m, l)] = basis
            for lab in table.labels:
                if not basis:
                    iso[(m, l, lab)] = []
                    continue
                p = module.projector(lab)
                iso[(m, l, lab)] = span_basis([p(v) for v in basis])
    return LwTable(n, spaces, iso, verdict)


def harmonic_spaces(module: KModule, m: int, l: int) -> Tuple[List[Vector], List[Vector]]:
    """(ker E1-, ker E1- and ker E3-) on block (m, l)."""
    return joint_kernel(module, m, l, ("E1-",)), joint_kernel(module, m, l, ("E1-", "E3-"))


def _lam(module: KModule, m: int) -> Fraction:
    table = module._table()
    return m + Fraction(module.r, 2) - n_c(module.rs, module.c, table, module.tau.label)


def verify_support(module: KModule, lw: LwTable) -> dict:
    allowed = set(b_set(module.r, lw.n))
    bad = [(k, v) for k, v in sorted(lw.spaces.items()) if v and k not in allowed]
    out = {
        "name": "support",
        "status": "fail" if bad else "pass",
        "blocks_checked": sorted([list(k) for k in lw.spaces]),
    }
    if bad:
        (m, l), vs = bad[0]
        out["witness"] = {"block": [m, l], "vector": vector_json(vs[0])}
    return out


def _contribution(lws, m: int, l: int, sigma: str) -> int:
    total = 0
    for item in lws:
        if item["sigma"] != sigma:
            continue
        m0, l0 = item["block"]
        dims = lw_type_dims(item["classified"], m // 2 + 2)
        total += dims.get((m - m0, l - l0), 0)
    return total


def verify_main_theorem(module: KModule, n: int, lw: Optional[LwTable] = None) -> dict:
    """Types, generated dimensions and the dimension bookkeeping of the decomposition of K."""
    if n < 4:
        raise TruncationTooSmall("the decomposition check needs N >= 4")
    table = module._table()
    lw = lw or lowest_weight_spaces(module, n)
    r = module.r
    lws = []
    failures = []
    for (m0, l0, lab), basis in sorted(lw.isotypic.items()):
        for v in basis:
            kind = classify_lw_vector(module, v)
            pred = predicted_type(m0, l0, r)
            e2 = module.generator("E2+")(v)
            gen = generated_dims(module, v, m0, n)
            expect = {
                k2: d
                for (dm, dl), d in lw_type_dims(kind, n).items()
                for k2 in [(m0 + dm, l0 + dl)]
                if 0 <= k2[0] <= n and k2[1] <= r
            }
            hw, zw = weight_of(module, table, m0, l0, lab)
            item = {
                "block": [m0, l0],
                "sigma": lab,
                "weight": [str(hw), str(zw)],
                "predicted": pred,
                "classified": kind,
                "vector": vector_json(v),
                "e2plus_image": vector_json(e2),
                "e2plus_zero": not e2,
                "generated_dims_match": gen == expect,
            }
            if kind != pred:
                failures.append({"kind": "type", "block": [m0, l0], "sigma": lab, "predicted": pred, "classified": kind})
            if gen != expect:
                failures.append({"kind": "generated", "block": [m0, l0], "sigma": lab, "computed": {f"{a},{b}": d for (a, b), d in gen.items()}})
            lws.append(item)
    recon = []
    for m in range(n - 3):
        for l in range(r + 1):
            iso = module.isotypic_split(m, l)
            for lab in table.labels:
                actual = len(iso[lab])
                pred = _contribution(lws, m, l, lab)
                entry = {"block": [m, l], "sigma": lab, "actual": actual, "predicted": pred}
                if actual != pred:
                    entry["status"] = "deficit" if pred < actual else "surplus"
                    if pred < actual:
                        gens = []
                        for item, (key, basis) in zip(lws, _lw_vectors(lw)):
                            if item["sigma"] != lab:
                                continue
                            gens.extend(generated_vectors(module, key, item["block"][0], n).get((m, l), []))
                        piv_basis, piv = rref(gens)
                        wit = next((b for b in iso[lab] if reduce_against(piv_basis, piv, b)), None)
                        entry["witness"] = vector_json(wit) if wit else []
                    failures.append({"kind": "reconstruction", **entry})
                recon.append(entry)
    mult = {}
    for (m0, l0, lab), basis in sorted(lw.isotypic.items()):
        if basis:
            lam = hook_lambda(m0, l0) if (m0, l0) != (0, 0) else ()
            deg = table.degree(lab)
            mult[f"{list(lam)}|{lab}"] = {"block": [m0, l0], "dim": len(basis), "multiplicity": len(basis) // deg}
    return {
        "name": "main_theorem",
        "status": "fail" if failures else "pass",
        "lowest_weight_vectors": lws,
        "reconstruction_blocks": f"m <= {n - 4}",
        "reconstruction": recon,
        "multiplicity_spaces": mult,
        "failures": failures,
    }


def _lw_vectors(lw: LwTable):
    for (m0, l0, lab), basis in sorted(lw.isotypic.items()):
        for v in basis:
            yield v, basis


def verify_row_decomposition(module: KModule, n: int) -> dict:
    """K^l_m = sum_p (E1+)^p H^l_{m-2p} for every block with m <= N."""
    e1 = module.generator("E1+")
    rows = []
    failure = None
    for m in range(n + 1):
        for l in range(module.r + 1):
            cols = []
            sources = []
            for p in range(m // 2 + 1):
                harm, _ = harmonic_spaces(module, m - 2 * p, l)
                for h in harm:
                    v = h
                    for _ in range(p):
                        v = e1(v)
                    cols.append(v)
                    sources.append((p, h))
            dim = len(module.block(m, l))
            rk = rank(cols)
            ok = len(cols) == dim and rk == dim
            rows.append({"block": [m, l], "dim": dim, "columns": len(cols), "rank": rk, "status": "pass" if ok else "fail"})
            if not ok and failure is None:
                failure = {"block": [m, l], "dim": dim, "columns": len(cols), "rank": rk}
                # first column already in the span of the earlier ones
                for i in range(len(cols)):
                    if not cols[i] or in_span(cols[:i], cols[i]):
                        p, h = sources[i]
                        failure.update({"power": p, "harmonic": vector_json(h), "vector": vector_json(cols[i])})
                        break
    out = {"name": "row_decomposition", "status": "fail" if failure else "pass", "blocks": rows}
    if failure:
        out["witness"] = failure
    return out


def verify_h_decomposition(module: KModule, n: int, lw: Optional[LwTable] = None) -> dict:
    """H^l_m = M^l_m + E2+ M^{l-1}_{m+1} + F_{m-1} M^{l-1}_{m-1} + E2+E3+ M^{l-2}_m, orthogonally."""
    lw = lw or lowest_weight_spaces(module, n)
    e1, e2, e3 = (module.generator(g) for g in ("E1+", "E2+", "E3+"))
    rows = []
    failure = None

    def M(m, l):
        return lw.spaces.get((m, l), []) if m >= 0 and 0 <= l else []

    for m in range(max(0, n - 2)):
        for l in range(module.r + 1):
            harm, _ = harmonic_spaces(module, m, l)
            lam = _lam(module, m - 1)
            parts = [
                list(M(m, l)),
                [e2(v) for v in M(m + 1, l - 1)],
                [{k: c for k, c in _sub(e2(e1(v)), e3(v), lam).items()} for v in M(m - 1, l - 1)],
                [e2(e3(v)) for v in M(m, l - 2)],
            ]
            parts = [[v for v in p if v] for p in parts]
            ranks = [rank(p) for p in parts]
            allv = [v for p in parts for v in p]
            total = rank(allv)
            inside = all(in_span(harm, v) for v in allv)
            ortho = True
            for i in range(4):
                for j in range(i + 1, 4):
                    for u in parts[i]:
                        for v in parts[j]:
                            if module.inner(u, v):
                                ortho = False
            ok = sum(ranks) == len(harm) and total == len(harm) and inside and ortho
            rows.append({"block": [m, l], "harmonic_dim": len(harm), "summand_ranks": ranks, "orthogonal": ortho, "status": "pass" if ok else "fail"})
            if not ok and failure is None:
                failure = rows[-1]
    out = {"name": "h_decomposition", "status": "fail" if failure else "pass", "blocks": rows}
    if failure:
        out["witness"] = failure
    return out


def _sub(a: Vector, b: Vector, lam: Fraction) -> Vector:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) - lam * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def verify_exactness(module: KModule, n: int) -> dict:
    """On A(n', sigma) = ker E1- and ker E3- in total degree n', ker E2+- = im E2+- for 1 <= n' <= N-2."""
    table = module._table()
    e2p, e2m = module.generator("E2+"), module.generator("E2-")
    rows = []
    failure = None
    for tot in range(1, n - 1):
        spaces = []
        for l in range(module.r + 1):
            m = tot - l
            if m < 0:
                continue
            spaces.extend(harmonic_spaces(module, m, l)[1])
        for lab in table.labels:
            p = module.projector(lab)
            A = span_basis([p(v) for v in spaces])
            if not A:
                continue
            entry = {"degree": tot, "sigma": lab, "dim": len(A)}
            ok = True
            for name, op in (("E2+", e2p), ("E2-", e2m)):
                images = [op(v) for v in A]
                im_rank = rank(images)
                ker_dim = len(A) - im_rank
                # images lie in A(tot) again; exactness means ker = im inside A
                entry[name] = {"kernel": ker_dim, "image": im_rank}
                if ker_dim != im_rank:
                    ok = False
            entry["status"] = "pass" if ok else "fail"
            rows.append(entry)
            if not ok and failure is None:
                kern = nullspace([e2p(v) for v in A])
                wit = None
                if kern:
                    vec = {}
                    for j, c in kern[0].items():
                        for k, v in A[j].items():
                            vec[k] = vec.get(k, 0) + c * v
                    wit = vector_json({k: v for k, v in vec.items() if v})
                failure = {"degree": tot, "sigma": lab, "kernel_vector": wit}
    out = {"name": "exactness", "status": "fail" if failure else "pass", "spaces": rows}
    if failure:
        out["witness"] = failure
    return out


def verify_c_comparison(module: KModule, module0: KModule, n: int, max_total: Optional[int] = None) -> dict:
    """Dimension tables of M^l_m(sigma) at c against those at c = 0."""
    a = lowest_weight_spaces(module, n, max_total).dims()
    b = lowest_weight_spaces(module0, n, max_total).dims()
    diff = sorted(set(a) | set(b))
    bad = [k for k in diff if a.get(k, 0) != b.get(k, 0)]
    out = {
        "name": "c_comparison",
        "status": "fail" if bad else "pass",
        "dims": [{"block": [k[0], k[1]], "sigma": k[2], "at_c": a.get(k, 0), "at_zero": b.get(k, 0)} for k in diff],
    }
    if bad:
        out["witness"] = {"block": [bad[0][0], bad[0][1]], "sigma": bad[0][2]}
    return out


def sl2_table(module: KModule, n: int) -> dict:
    """l = 0 part: sl(2) lowest weights m + r/2 - N_c(tau) with the harmonic dimensions."""
    rows = []
    for m in range(n - 1):
        harm, _ = harmonic_spaces(module, m, 0)
        if harm:
            rows.append({"m": m, "lowest_weight": str(_lam(module, m)), "dim": len(harm)})
    return {"name": "sl2_harmonics", "status": "pass", "rows": rows}
