"""The rank-two pair on a genus-2 curve: stable with the field, unstable without.

The model is a sum of two line bundles of degrees 1 and -1 with one field
component mapping the first summand into the second.  The positive-degree
summand is not field-invariant, so it cannot destabilize; switch the arrow
off and it immediately does.  This is the classical example showing that
stability with a field is strictly weaker than classical stability.
"""

from higgs_lab import (
    HiggsChainSpec,
    KahlerData,
    gieseker_classify,
    normalized_p,
    realize,
    slope_classify,
)

ambient = KahlerData.curve(genus=2, deg_h=1)

with_field = HiggsChainSpec(
    ambient=ambient, summand_degrees=(1, -1), arrows=frozenset({(1, 2)})
)
without_field = HiggsChainSpec(ambient=ambient, summand_degrees=(1, -1))

for name, spec in (("field on", with_field), ("field off", without_field)):
    model = realize(spec)
    print(f"{name}: invariant coordinate subobjects {[e.id for e in model.subobjects]}")
    print(f"  object p = {normalized_p(model.data)}")
    for entry in model.subobjects:
        print(f"  p of {entry.id} = {normalized_p(entry.data)}")
    g = gieseker_classify(model)
    s = slope_classify(model)
    print(f"  gieseker: {g.classification.value}" + (f" (witness {g.witness})" if g.witness else ""))
    print(f"  slope:    {s.classification.value}" + (f" (witness {s.witness})" if s.witness else ""))
    print()
