"""Laboratory-scale estimates for a rotating platinum film, recomputed.

Prints each quoted number next to its recomputation and the convention used.
The same table is available as ``rotspin repro-paper``.
"""

from rotspin.repro import repro_rows

rows = repro_rows()
width = max(len(r.quantity) for r in rows)
print(f"{'quantity':<{width}}  {'quoted':>10}  {'computed':>12}  {'units':<8} agree")
for r in rows:
    ref = "-" if r.reference_value is None else f"{r.reference_value:.3g}"
    print(f"{r.quantity:<{width}}  {ref:>10}  {r.computed_value:12.4e}  {r.units:<8} {'yes' if r.agreement else 'NO'}")

print()
for r in rows:
    if not r.agreement:
        print(f"- {r.quantity}: {r.convention_notes}")
