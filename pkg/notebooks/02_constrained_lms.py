# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Constrained LMS on a linear array
#
# Three jammers at -14, 71 and 66 degrees, look direction broadside.  The
# first part shows learning curves of the quadratically constrained LMS,
# Frost's linearly constrained LMS and loaded SMI; the second shows the
# averaged beampatterns after training on snapshots that contain the target.

# %%
import numpy as np

from mti.harness import default_config, run_quad_learn, run_quad_pattern
from mti.metrics import pattern_gain_at

cfg = default_config("QUAD_LEARN", n_values=(128,), sir_db_values=(-60,), trials=10)
curves = {}
for r in run_quad_learn(cfg):
    curves.setdefault(r.algorithm, []).append(r.sinr_out_db)
print("M      " + "  ".join(f"{m:6d}" for m in cfg.m_values))
for alg, c in curves.items():
    print(f"{alg:9s}" + "  ".join(f"{v:6.1f}" for v in c))

# %%
pcfg = default_config("QUAD_PATTERN", trials=5)
patterns = run_quad_pattern(pcfg)
for alg, p in patterns.items():
    jam = ", ".join(f"{pattern_gain_at(p, a):6.1f}" for a in pcfg.jammer_angles)
    print(f"{alg:9s} signal {pattern_gain_at(p, pcfg.target_angle):6.1f} dB, jammers {jam} dB")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 4))
    for alg, p in patterns.items():
        ax.plot(p.angles, np.maximum(p.gains_db, -80), label=alg, linewidth=0.8)
    for a in pcfg.jammer_angles:
        ax.axvline(a, color="k", linestyle=":", linewidth=0.6)
    ax.set_xlabel("angle, deg")
    ax.set_ylabel("gain, dB")
    ax.legend()
