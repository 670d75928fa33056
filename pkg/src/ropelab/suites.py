"""Theorem-verification sweeps shared by the CLI and the acceptance tests.

Each suite returns a list of (name, passed, detail) triples; a suite passes
when every triple does.  All sweeps are deterministic under their seed.
"""

from __future__ import annotations

from itertools import combinations

from .bivar import hp_from_coeffs, hp_mul, hp_zero
from .complexes import (
    i2_resolution,
    is_minimal,
    minimal_i2_resolution,
    rope_resolution,
    struct_sheaf_resolution,
    verify_complex,
    verify_exactness_certificate,
)
from .families import component_dim, minimal_types, rho_min_dominates, thm613_matrix
from .fields import make_field
from .graded import submatrix_det
from .linalg import same_span
from .normal import (
    check_pij,
    double_line_formula,
    double_line_solution_oracle,
    expected_h0_if_58,
    h0_normal,
    normal_lower_bound,
    oracle_residual,
    record_to_vector,
)
from .rope import (
    binom1,
    hilbert_function,
    h0_structure,
    random_double_line,
    random_rope,
    rao_function,
    rao_via_cokerA,
    rope_from_A,
)


def _result(name, ok, detail=""):
    return (name, bool(ok), detail)


def suite_double_lines(n_values=(3, 4, 5), g_values=range(-1, -7, -1), chars=(0, 2, 3),
                       samples=10, seed=0):
    """Criteria 1 and 2: Cor 5.7 values and the Thm 6.11 obstruction gap."""
    out = []
    for ch in chars:
        K = make_field(ch)
        for n in n_values:
            for g in g_values:
                want = double_line_formula(n, g, ch)
                cdim = component_dim(n, 2, g)
                ok_h0 = True
                ok_gap = True
                detail = ""
                for s in range(samples):
                    rope = random_double_line(n, g, K, seed=seed + 1000 * s + 10 * n - g)
                    h0 = h0_normal(rope).h0
                    if h0 != want:
                        ok_h0 = False
                        detail = f"h0={h0} want={want} seed={seed + 1000 * s + 10 * n - g}"
                        break
                    if ch == 2 and g <= -3:
                        if not (h0 > cdim and h0 - cdim == -g - 2):
                            ok_gap = False
                            detail = f"gap {h0 - cdim} != {-g - 2}"
                            break
                    else:
                        if h0 != cdim:
                            ok_gap = False
                            detail = f"h0={h0} != dim {cdim}"
                            break
                out.append(_result(f"cor5.7 n={n} g={g} char={ch}", ok_h0, detail))
                out.append(_result(f"thm6.11 n={n} g={g} char={ch}", ok_gap, detail))
    return out


def _thm613_cells(p_values=(1, 2, 3), degrees=(3, 4)):
    for d in degrees:
        for s in range(0, d - 1):
            w = d - 1 - s
            for p in p_values:
                lo, hi = s + w, (s + w) * (p + 1) + s - 1
                for r in range(lo, hi + 1):
                    yield p, s, w, r


def suite_thm613(chars=(0, 2), p_values=(1, 2, 3), degrees=(3, 4)):
    """Criterion 3: the explicit general ropes of every degree-3/4 type."""
    out = []
    for ch in chars:
        K = make_field(ch)
        for p, s, w, r in _thm613_cells(p_values, degrees):
            name = f"thm6.13 (p={p},s={s},w={w},r={r}) char={ch}"
            try:
                A = thm613_matrix(p, s, w, r, K)
                rope = rope_from_A(r + 2, A)
            except Exception as e:
                out.append(_result(name, False, f"construction: {e}"))
                continue
            want_type = tuple(sorted([p] * w + [p + 1] * s))
            checks = []
            checks.append(rope.alpha == want_type)
            checks.append(rope.nondegenerate)
            sec = h0_normal(rope)
            checks.append(sec.condition58)
            if rope.alpha[-1] - 2 * rope.alpha[0] <= -2:
                k, g = rope.k, rope.genus
                checks.append(sec.h0 == (r + 1) * (2 + k - g) - k * k)
            ok = all(checks)
            out.append(_result(name, ok, "" if ok else f"checks={checks} alpha={rope.alpha}"))
    return out


def _nondegenerate_types(n_max=5, gmax=4):
    """(n, alpha) with a nondegenerate rope: parts >= 0, sum >= k = n-1-len."""
    def ascending(total, parts):
        def rec(lo, left, parts):
            if parts == 1:
                if left >= lo:
                    yield (left,)
                return
            for v in range(lo, left // parts + 1):
                for rest in rec(v, left - v, parts - 1):
                    yield (v,) + rest
        return rec(0, total, parts)

    for n in range(3, n_max + 1):
        for k in range(1, n - 1):
            parts = n - 1 - k
            for total in range(max(1, k), gmax + 1):
                for alpha in ascending(total, parts):
                    yield n, alpha


def suite_resolutions(n_max=5, gmax=4, samples=5, chars=(0, 2, 3), seed=0):
    """Criterion 4: complexes verify, certificates pass, minimality flips."""
    out = []
    for idx, (n, alpha) in enumerate(_nondegenerate_types(n_max, gmax)):
        ch = chars[idx % len(chars)]
        K = make_field(ch)
        name = f"resolutions n={n} alpha={alpha} char={ch}"
        ok = True
        detail = ""
        for s in range(samples):
            try:
                rope = random_rope(n, alpha, K, seed=seed + 31 * idx + s)
            except Exception as e:
                ok, detail = False, f"generation: {e}"
                break
            if not rope.nondegenerate:
                ok, detail = False, "degenerate sample"
                break
            g = rope_resolution(rope)
            e = struct_sheaf_resolution(rope)
            window = range(0, max(rope.beta) + 4)
            checks = {
                "rope-complex": verify_complex(g),
                "rope-exact": verify_exactness_certificate(
                    g, lambda d: hilbert_function(rope, d), window, seed=seed + s
                ),
                "rope-minimal": is_minimal(g),
                "struct-complex": verify_complex(e),
                "struct-exact": verify_exactness_certificate(
                    e, lambda d: h0_structure(rope, d), range(-max(rope.alpha) - 2, 5),
                    seed=seed + s,
                ),
            }
            if not all(checks.values()):
                ok, detail = False, str({k: v for k, v in checks.items() if not v})
                break
        out.append(_result(name, ok, detail))
    for ch in chars:
        K = make_field(ch)
        c1 = i2_resolution(min(n_max, 5), K)
        c2 = minimal_i2_resolution(min(n_max, 5), K)
        nn = min(n_max, 5)
        hf = lambda j: binom1(j + 1) + (nn - 1) * binom1(j)
        out.append(_result(
            f"i2-resolutions n={nn} char={ch}",
            verify_complex(c1) and verify_complex(c2) and is_minimal(c2)
            and verify_exactness_certificate(c1, hf, range(0, 7))
            and verify_exactness_certificate(c2, hf, range(0, 7)),
        ))
        # mutation: embedding adds a constant entry to B and must break minimality
        rope = random_rope(3, (2,), K, seed=seed)
        from .rope import _block_embed

        fat = _block_embed(rope, 4)
        gmin = rope_resolution(rope)
        gfat = rope_resolution(fat, allow_degenerate=True)
        out.append(_result(
            f"minimality-mutation char={ch}",
            is_minimal(gmin) and not is_minimal(gfat) and verify_complex(gfat)
            and verify_exactness_certificate(gfat, lambda d: hilbert_function(fat, d), range(0, 7)),
        ))
    return out


def _det_duality(rope) -> bool:
    """det A_J / ((-1)^{sum I} det B_I) constant over all complementary splits."""
    K = rope.field
    r, k = rope.r, rope.k
    ratio = None
    for I in combinations(range(r + 1), k):
        J = [j for j in range(r + 1) if j not in I]
        dA = submatrix_det(rope.A, range(rope.A.nrows), J)
        dB = submatrix_det(rope.B, I, range(k))
        sign = (-1) ** sum(I)
        if dB.is_zero:
            if not dA.is_zero:
                return False
            continue
        if dA.is_zero:
            return False
        lead = next(i for i, c in enumerate(dB.coeffs) if c)
        if lead >= len(dA.coeffs) or not dA.coeffs[lead]:
            return False
        c = K.div(dA.coeffs[lead], K.mul(K.of(sign), dB.coeffs[lead]))
        from .bivar import hp_scale

        if hp_scale(dB, K.mul(K.of(sign), c)) != dA:
            return False
        if ratio is None:
            ratio = c
        elif ratio != c:
            return False
    return ratio is not None


def suite_identities(count=200, chars=(0, 2, 3, 5), seed=0):
    """Criterion 5: cross-formula identities on random ropes."""
    out = []
    pool = list(_nondegenerate_types(5, 4))
    ok_types = ok_rao = ok_h0 = ok_dual = True
    detail = ""
    for idx in range(count):
        n, alpha = pool[idx % len(pool)]
        K = make_field(chars[idx % len(chars)])
        rope = random_rope(n, alpha, K, seed=seed + idx)
        if not (sum(rope.alpha) == sum(rope.beta) == -rope.genus):
            ok_types, detail = False, repr(rope)
            break
        window = range(-max(rope.alpha) - 2, max(rope.beta) + 3)
        if any(rao_function(rope, i) != rao_via_cokerA(rope, i) for i in window):
            ok_rao, detail = False, repr(rope)
            break
        if any(h0_structure(rope, d) != hilbert_function(rope, d) + rao_function(rope, d)
               for d in window):
            ok_h0, detail = False, repr(rope)
            break
        if not _det_duality(rope):
            ok_dual, detail = False, repr(rope)
            break
    out.append(_result("identities type-sums", ok_types, detail))
    out.append(_result("identities rao-dual-route", ok_rao, detail))
    out.append(_result("identities h0=hilb+rao", ok_h0, detail))
    out.append(_result("identities det-duality", ok_dual, detail))
    return out


def suite_pij_oracles(n_values=(3, 4, 5), g_values=(-1, -2, -3, -4), seed=0):
    """Criterion 6: Prop 5.4 P-blocks and the Prop 5.6 oracle spans."""
    out = []
    for ch in (0, 3, 2):
        K = make_field(ch)
        for n in n_values:
            for g in g_values:
                rope = random_double_line(n, g, K, seed=seed + n - 7 * g)
                sec = h0_normal(rope)
                name = f"prop5.4 n={n} g={g} char={ch}"
                out.append(_result(name, check_pij(rope, sec)))
                lay = sec.system.layout
                vecs = []
                r = rope.r
                if ch != 2:
                    for i in range(r + 1):
                        for mono in ((1, 0), (0, 1)):
                            lam = [hp_zero(K)] * (r + 1)
                            lam[i] = hp_from_coeffs(K, mono)
                            rec = double_line_solution_oracle(rope, {"lam": lam})
                            if not oracle_residual(rope, sec.system, rec):
                                vecs = None
                                break
                            vecs.append(list(rec.vector))
                        if vecs is None:
                            break
                else:
                    bp = [s for s in range(rope.k) if lay.betas[s] >= 1]
                    idc = [s for s in range(rope.k) if lay.betas[s] == 0]
                    params = []
                    if g == -1:
                        params.append({"cprime": 1})
                        for c in range(3):
                            coeffs = [0, 0, 0]
                            coeffs[c] = 1
                            params.append({"p1": hp_from_coeffs(K, coeffs)})
                    else:
                        for s in bp:
                            for c in range(lay.betas[s] + 2):
                                coeffs = [0] * (lay.betas[s] + 2)
                                coeffs[c] = 1
                                params.append({"ps": {s: hp_from_coeffs(K, coeffs)}})
                    for s in idc:
                        for mono in ((1, 0), (0, 1)):
                            params.append({"lam": {s: hp_from_coeffs(K, mono)}})
                    for prm in params:
                        rec = double_line_solution_oracle(rope, prm)
                        if not oracle_residual(rope, sec.system, rec):
                            vecs = None
                            break
                        vecs.append(list(rec.vector))
                name = f"prop5.6 span n={n} g={g} char={ch}"
                if vecs is None:
                    out.append(_result(name, False, "oracle residual nonzero"))
                    continue
                if g == -1:
                    arow = rope.A.entries[0]
                    p = {(i, j): hp_mul(arow[i], arow[j])
                         for i in range(r + 1) for j in range(i, r + 1)}
                    vecs.append(record_to_vector(rope, lay, p=p))
                sol = [list(rec.vector) for rec in sec.basis]
                out.append(_result(name, same_span(K, sol, vecs),
                                   f"dims {len(sol)} vs {len(vecs)}"))
    return out


def suite_rho_min(k_values=(1, 2), gmax=10):
    """Criterion 7: exhaustive pointwise minimality of the balanced Rao function."""
    out = []
    for k in k_values:
        for n in (k + 2, k + 3, k + 4):
            for g in range(-1, -gmax - 1, -1):
                ok = rho_min_dominates(n, k, g, range(g - 2, -g + 3))
                out.append(_result(f"prop6.9 n={n} k={k} g={g}", ok))
    return out


def suite_lower_bound(count=50, seed=0):
    """Criterion 8: Prop 5.9 bound and the Cor 5.10 equality criterion."""
    out = []
    types = [
        (5, (2, 2)), (5, (2, 3)), (5, (3, 3)), (5, (2, 4)),
        (6, (2, 2, 2)), (6, (2, 2)), (6, (2, 3)), (6, (3, 3)), (6, (2, 4)),
        (4, (2,)), (4, (3,)), (5, (4,)), (5, (2, 2, 2)),
    ]
    chars = (0, 2, 3)
    ok_bound = ok_eq = True
    detail = ""
    for idx in range(count):
        n, alpha = types[idx % len(types)]
        K = make_field(chars[idx % len(chars)])
        rope = random_rope(n, alpha, K, seed=seed + idx)
        if rope.degree <= 2 or rope.alpha[0] < 2:
            continue
        sec = h0_normal(rope)
        lb = normal_lower_bound(rope)
        if sec.h0 < lb:
            ok_bound, detail = False, f"{rope} h0={sec.h0} bound={lb}"
            break
        if (sec.h0 == lb) != sec.condition58:
            ok_eq, detail = False, f"{rope} h0={sec.h0} bound={lb} cond58={sec.condition58}"
            break
        if sec.condition58 and sec.h0 != expected_h0_if_58(rope):
            ok_eq, detail = False, f"{rope} prediction mismatch"
            break
    out.append(_result("prop5.9 lower bound", ok_bound, detail))
    out.append(_result("cor5.10 equality iff cond-5.8", ok_eq, detail))
    return out


SUITES = {
    "double-lines": suite_double_lines,
    "thm613": suite_thm613,
    "resolutions": suite_resolutions,
    "identities": suite_identities,
    "pij-oracles": suite_pij_oracles,
    "rho-min": suite_rho_min,
    "lower-bound": suite_lower_bound,
}
