"""Chain complexes over Q: exact Betti numbers and totalization."""

from __future__ import annotations

from .scalars import Q0, rank, mat_is_zero, mat_mul, zero_matrix


def chain_betti_from_operators(ops, dims) -> list:
    """Betti numbers of a cochain complex; ops[n] maps degree n to n+1.

    ops[n] is a dims[n+1] x dims[n] matrix (may be empty when a side is 0).
    Asserts square-zero.
    """
    n_deg = len(dims)
    ranks = []
    for n in range(n_deg - 1):
        if dims[n] == 0 or dims[n + 1] == 0:
            ranks.append(0)
        else:
            ranks.append(rank(ops[n]))
    for n in range(n_deg - 2):
        if ranks[n] and ranks[n + 1]:
            assert mat_is_zero(mat_mul(ops[n + 1], ops[n])), "not a complex"
    out = []
    for n in range(n_deg):
        r_out = ranks[n] if n < n_deg - 1 else 0
        r_in = ranks[n - 1] if n > 0 else 0
        out.append(dims[n] - r_out - r_in)
    assert sum((-1) ** n * b for n, b in enumerate(out)) == \
        sum((-1) ** n * d for n, d in enumerate(dims)), "Euler characteristic"
    return out


def totalize_bicomplex(sizes: dict, dprime: dict, dsecond: dict) -> list:
    """Betti numbers of the total complex of two anticommuting raising maps.

    sizes maps (p, q) to the spot dimension; dprime raises p, dsecond
    raises q; the total differential is their sum (signs are already
    embedded in the operators).
    """
    max_p = max(p for p, _ in sizes)
    max_q = max(q for _, q in sizes)
    top = max_p + max_q

    def spots(n):
        return [(p, n - p) for p in range(max(0, n - max_q), min(max_p, n) + 1)]

    def offset_table(n):
        off, total = {}, 0
        for s in spots(n):
            off[s] = total
            total += sizes[s]
        return off, total

    dims = []
    ops = []
    for n in range(top + 1):
        off_n, dim_n = offset_table(n)
        dims.append(dim_n)
        if n == top:
            break
        off_m, dim_m = offset_table(n + 1)
        mat = zero_matrix(dim_m, dim_n)
        for (p, q) in spots(n):
            for op, tgt in ((dprime.get((p, q)), (p + 1, q)),
                            (dsecond.get((p, q)), (p, q + 1))):
                if op is None or tgt not in off_m:
                    continue
                oi, oj = off_m[tgt], off_n[(p, q)]
                for i, row in enumerate(op.matrix):
                    for j, c in enumerate(row):
                        if c != 0:
                            mat[oi + i][oj + j] += c
        ops.append(mat)
    return chain_betti_from_operators(ops, dims)


def complex_betti(linmaps) -> list:
    """Betti numbers from a list of LinearMaps d_n: degree n -> n+1."""
    dims = [len(lm.src_keys) for lm in linmaps]
    dims.append(len(linmaps[-1].dst_keys))
    return chain_betti_from_operators([lm.matrix for lm in linmaps], dims)


def duality_dims(T, C) -> dict:
    """Dimension comparison between the generator-side total complex and
    its transported image: H_k on one side matches H^(n-k) on the other.

    Both totalizations are computed independently and compared degree by
    degree.  Requires the generator to anticommute with the degree (1,0)
    differential, which holds when C comes from an invariant volume form.
    """
    from .bv import transport_iso

    ti = transport_iso(T, C)
    G = ti["generator"]
    car = G.carrier
    n = car.r1
    ds = car.dsecond_all()

    # generator side: reindex p = n - k so the operator raises p
    sizes1, dp1, ds1 = {}, {}, {}
    for q in range(car.r2 + 1):
        for k in range(car.r1 + 1):
            sizes1[(n - k, q)] = len(car.keys(q, k))
            if k >= 1:
                dp1[(n - k, q)] = G.maps[(q, k)]
            if q < car.r2:
                ds1[(n - k, q)] = ds[(q, k)]
    betti1 = totalize_bicomplex(sizes1, dp1, ds1)

    # transported side
    tk = ti["target_keys"]
    sizes2 = {(p, q): len(tk(q, p))
              for p in range(n + 1) for q in range(car.r2 + 1)}
    betti2 = totalize_bicomplex(sizes2, ti["dnabla"], ti["d2_target"])
    return {"generator-side": betti1, "transported-side": betti2,
            "7.12": betti1 == betti2}
