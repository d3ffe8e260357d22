"""Walk a few entries of the identity registry and verify them live."""

from htmix.identities import get_case, registry, verify

print(f"the registry holds {len(registry())} distributional equalities")
print()
for case in registry()[:6]:
    print(f"  {case.id}  {case.anchor}")
    print(f"       domain: {case.domain_text}")
print("  ...")

picks = [
    ("I03", {"a": 1.5}),
    ("I08", {"d": 0.6}),
    ("I15", {"a": 1.0}),
    ("I20", {"a": 1.5, "v": 2.0}),
    ("I24", {"d": 0.7, "v": 0.5}),
]

print()
print("checking five cases at n=50000 per side, seed 7")
for case_id, params in picks:
    case = get_case(case_id)
    report = verify(case, params, n=50_000, seed=7)
    verdict = "pass" if report.verdict else "FAIL"
    print(f"\n  {case.id}  {case.anchor}")
    print(f"       params {params} -> {verdict}")
    for m in report.metrics:
        print(f"       {m.name:8s} {m.value:.5f}  (threshold {m.threshold:.5f})")

print()
print("a domain refusal, as it should be")
case = get_case("I22")
try:
    verify(case, {"a": 1.5, "v": 1.5}, n=1000, seed=7)
except Exception as exc:
    print(f"  I22 at v=1.5: {exc}")
