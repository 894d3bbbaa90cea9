"""Sparse exact linear algebra by incremental column elimination."""


def solve_combination(columns, target, one):
    """Find ``x`` with ``sum(x[j] * columns[j]) == target``.

    Columns and target are sparse vectors (dicts key -> field element).
    Returns a dict ``j -> coefficient`` or ``None`` if no combination exists.
    """
    basis = []
    for j, col in enumerate(columns):
        vec, combo = _reduce(dict(col), {j: one}, basis, sign=-1)
        if not vec:
            continue
        pivot = next(iter(vec))
        inv = 1 / vec[pivot]
        vec = {k: v * inv for k, v in vec.items()}
        combo = {k: v * inv for k, v in combo.items()}
        basis.append((pivot, vec, combo))
    rest, combo = _reduce(dict(target), {}, basis, sign=1)
    if rest:
        return None
    return combo


def _reduce(vec, combo, basis, sign):
    for pivot, bvec, bcombo in basis:
        c = vec.get(pivot)
        if not c:
            continue
        for k, v in bvec.items():
            s = vec.get(k)
            s = -c * v if s is None else s - c * v
            if s:
                vec[k] = s
            else:
                vec.pop(k, None)
        for k, v in bcombo.items():
            s = combo.get(k)
            d = c * v if sign > 0 else -c * v
            s = d if s is None else s + d
            if s:
                combo[k] = s
            else:
                combo.pop(k, None)
    return vec, combo


def kernel_vector(columns, one):
    """A nonzero ``x`` with ``sum(x[j] * columns[j]) == 0``, or ``None``."""
    basis = []
    for j, col in enumerate(columns):
        vec, combo = _reduce(dict(col), {j: one}, basis, sign=-1)
        if not vec:
            return combo
        pivot = next(iter(vec))
        inv = 1 / vec[pivot]
        basis.append((pivot, {k: v * inv for k, v in vec.items()},
                      {k: v * inv for k, v in combo.items()}))
    return None
