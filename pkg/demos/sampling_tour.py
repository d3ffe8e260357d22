"""Draw from every family and sanity-check a few against closed transforms."""

import numpy as np

from htmix.distributions import (
    FAMILIES,
    METHODS,
    DistSpec,
    analytic_cf,
    analytic_lst,
    sample,
)
from htmix.streams import RandomStream
from htmix.verification import ecf_distance, lst_distance

N = 100_000
stream = RandomStream(8)

params = {
    "weibull": {"gamma": 0.7},
    "gamma": {"r": 2.0, "lam": 1.0},
    "gen_gamma": {"r": 1.5, "alpha": -0.8, "lam": 1.0},
    "exp_power": {"nu": 2.0},
    "neg_binom": {"nu": 1.5, "p": 0.3},
    "stable": {"alpha": 1.2, "theta": "symmetric"},
    "stable_ratio": {"delta": 0.6},
    "z_mix": {"r": 0.5, "mu": 1.0},
    "mittag_leffler": {"delta": 0.7},
    "gen_mittag_leffler": {"delta": 0.7, "nu": 2.0},
    "linnik": {"alpha": 1.5},
    "gen_linnik": {"alpha": 1.5, "nu": 2.0},
}

print(f"quartiles of {N} draws from each family")
for sub, family in enumerate(FAMILIES):
    spec = DistSpec(family, params.get(family))
    batch = sample(spec, N, stream.shifted(sub))
    q25, q50, q75 = np.percentile(batch.values, [25, 50, 75])
    print(f"  {spec.describe():45s} {q25:9.4f} {q50:9.4f} {q75:9.4f}")

print()
print("empirical transforms against closed forms (distance, envelope)")
checks = [
    DistSpec("stable", {"alpha": 0.5, "theta": "one_sided"}),
    DistSpec("mittag_leffler", {"delta": 0.7}),
    DistSpec("gen_mittag_leffler", {"delta": 0.7, "nu": 2.0}),
    DistSpec("linnik", {"alpha": 1.5}),
    DistSpec("gen_linnik", {"alpha": 1.5, "nu": 2.0}),
]
for sub, spec in enumerate(checks, start=100):
    batch = sample(spec, N, stream.shifted(sub))
    lst = analytic_lst(spec)
    if lst is not None:
        d = lst_distance(batch.values, lst)
        print(f"  {spec.describe():45s} LST {d:.5f}  ({1.5/np.sqrt(N):.5f})")
    cf = analytic_cf(spec)
    if cf is not None:
        d = ecf_distance(batch.values, cf)
        print(f"  {spec.describe():45s} ECF {d:.5f}  ({4.0/np.sqrt(N):.5f})")

print()
print("one family, several routes: generalized Linnik (1.5, 0.8)")
for sub, method in enumerate(METHODS["gen_linnik"], start=200):
    spec = DistSpec("gen_linnik", {"alpha": 1.5, "nu": 0.8}, method)
    batch = sample(spec, N, stream.shifted(sub))
    d = ecf_distance(batch.values, analytic_cf(spec))
    print(f"  {method:15s} ECF distance {d:.5f}")

print()
print("degenerate corners")
ones = sample(DistSpec("stable", {"alpha": 1.0, "theta": "one_sided"}), 5,
              stream.shifted(300))
print("  one-sided stable at alpha=1 is the constant 1:", ones.values)
point = sample(DistSpec("z_mix", {"r": 1.0, "mu": 2.5}), 5, stream.shifted(301))
print("  z-mix at r=1 is the point mass at mu:", point.values)
