# Speed-limit ratio and non-Markovianity versus driving strength (Figs. 3, 4, 7 style).
import numpy as np

from qslmq import ModelParams, SweepSpec, find_critical_omega, run_sweep

spec = SweepSpec(omega_count=61, lambda_list=(3.0, 0.01), beta_list=(0.0, 1e-9))
results = run_sweep(spec, workers=1)

for (lam, beta), rows in results.items():
    q = np.array([r.qsl_ratio for r in rows])
    nm = np.array([r.nm for r in rows])
    oc = find_critical_omega(ModelParams(lam=lam, beta=beta))
    print(f"lambda={lam:<5g} beta={beta:<6g} Omega_c={oc:7.4f}  "
          f"min tau_qsl/tau={q.min():.4f}  max N={nm.max():.2e}")

# Below Omega_c the evolution is not sped up and no information flows back.
rows = results[3.0, 0.0]
oc = find_critical_omega(ModelParams(lam=3.0))
print("rows below Omega_c with N > 0:", sum(r.nm > 0 for r in rows if r.omega_over_gamma < oc))
