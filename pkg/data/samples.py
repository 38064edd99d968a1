"""Sample groups and generating sets for suites and tests.

Each group gets a handful of symmetric generating sets: the standard one, one with a
duplicated generator, one containing 0, and a non-standard one. Every set is returned in
the paired s_i = -s_{i+l'} order.
"""

from models.group import GeneratingSet, canonical_generating_set, make_group

# Groups exercised by the torsion suite
SAMPLE_TORSION_GROUPS = [
    (1, (2,)),
    (1, (3,)),
    (2, (2,)),
    (1, (2, 2)),
]


def sample_generating_sets(g):
    """Named symmetric generating sets of `g`, as an ordered list of (name, GeneratingSet)."""
    standard = canonical_generating_set(g)
    units = [g.unit(i) for i in range(g.free_rank + g.torsion_count)]
    half = list(units)
    samples = [('standard', standard)]

    if g.free_rank >= 1:
        samples.append(('duplicate', GeneratingSet.from_half(g, half + [units[0]])))
    samples.append(('with_zero', GeneratingSet.from_half(g, half + [g.zero()])))

    if g.is_torsion_free and g.free_rank == 1:
        samples.append(('wide', GeneratingSet.from_half(g, [g.element((2,)), g.element((3,))])))
    elif g.is_torsion_free:
        # e_1, e_1 + e_2, e_2 + e_3, ...: unimodular, so it still generates
        skew = [units[0]] + [g.add(units[i - 1], units[i]) for i in range(1, g.free_rank)]
        samples.append(('skew', GeneratingSet.from_half(g, skew)))
    elif g.free_rank >= 1:
        mixed_first = g.element(units[0].free, tuple(1 for _ in g.torsion_orders))
        mixed = [mixed_first] + units[1:]
        samples.append(('mixed', GeneratingSet.from_half(g, mixed)))
    return samples


def get_sample_groups(max_rank, torsion=False):
    """Z^1..Z^max_rank, or the fixed torsion groups when `torsion` is set."""
    if torsion:
        return [make_group(m, orders) for m, orders in SAMPLE_TORSION_GROUPS]
    return [make_group(m) for m in range(1, max_rank + 1)]
