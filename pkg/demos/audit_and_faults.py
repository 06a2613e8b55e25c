"""Run the law audit, then break the implementation on purpose and watch it fail."""
from synaptica.audit import FAULTS, audit, counterexample_shrink, inject

report = audit("matrix", [2, 4], trials=10, seed=1)
print(report.table())

print("\nexact model, zero residuals:", audit("setfn", [4], trials=10, seed=1).ok)

for name in ("meet-product", "carrier-no-cut"):
    with inject(name):
        bad = audit("matrix", [2, 5], trials=5, seed=1)
        print(f"\n{name}: {FAULTS[name].description}")
        print("  failing laws:", ", ".join(bad.failing_laws()))
        first = next(r for r in bad.laws if r.counterexample)
        small = counterexample_shrink(first.counterexample)
        print(f"  {first.id}: dim {first.counterexample['dim']} trial {first.counterexample['trial']}"
              f" shrinks to dim {small['dim']} trial {small['trial']} ({small['check']})")
