"""Filtrations: the non-unique chains with one grading, and the unique one.

A strictly semistable object admits several chains with stable equal-p
quotients, but their quotient multisets always coincide; an unstable object
has exactly one chain with semistable quotients of strictly decreasing
normalized polynomials.
"""

from higgs_lab import (
    HiggsChainSpec,
    KahlerData,
    all_harder_narasimhan,
    all_jordan_holder,
    grading,
    harder_narasimhan,
    normalized_p,
    realize,
    s_equivalent,
)


def chain(genus, degrees, arrows=()):
    spec = HiggsChainSpec(
        ambient=KahlerData.curve(genus, 1),
        summand_degrees=tuple(degrees),
        arrows=frozenset(arrows),
    )
    return realize(spec)

# two degree-zero lines on an elliptic curve: strictly semistable
split = chain(genus=1, degrees=(0, 0))
print("strictly semistable two-line object")
for filtration in all_jordan_holder(split):
    pieces = [(q.rank, str(q.chi)) for q in filtration.quotients]
    print(f"  chain {' > '.join(filtration.steps)} with quotients {pieces}")
print(f"  gradings agree: {len({grading(f) for f in all_jordan_holder(split)}) == 1}")

# the same invariants with a field component: different chain, same grading
arrowed = chain(genus=1, degrees=(0, 0), arrows={(1, 2)})
print(f"  S-equivalent to the arrowed variant: {s_equivalent(split, arrowed)}")
print()

# degrees (2, 0) on the rational curve: unstable, so a two-step chain
unstable = chain(genus=0, degrees=(2, 0))
filtration = harder_narasimhan(unstable)
print("unstable two-line object")
print(f"  chain 0 < {' < '.join(filtration.steps)}")
print(f"  quotient polynomials: {[str(normalized_p(q)) for q in filtration.quotients]}")
print(f"  chains found by exhaustive search: {len(all_harder_narasimhan(unstable))}")
