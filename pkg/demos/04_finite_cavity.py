# Finite cavity: the mirror echoes only matter when lambda * tau0 is not large.
import numpy as np

from qslmq import Kernel, KernelKind, ModelParams, VolterraConfig, solve_volterra

cfg = VolterraConfig(horizon=3.0, step=1e-3)
for tau0 in (0.1, 0.5, 2.0, 50 / 3.0):
    p = ModelParams(lam=3.0, omega0=20.0, omega_drive=2.0, tau0=tau0)
    finite = solve_volterra(Kernel(p, KernelKind.FINITE_CAVITY), cfg)
    continuum = solve_volterra(Kernel(p), cfg)
    gap = np.max(np.abs(finite.population - continuum.population))
    print(f"lambda*tau0 = {3.0 * tau0:6.2f}: max population difference = {gap:.3e}")
