# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Maximum-entropy whitening
#
# Fit an AR model to a clutter record with Burg's lattice, inspect the
# spectrum estimate and check that the prediction-error filter whitens the
# record.

# %%
import numpy as np
from scipy.signal import welch

from mti.mem import ar_synthesize, burg_estimate, mem_psd, prediction_error_filter

rng = np.random.default_rng(0)
innovation = (rng.standard_normal(4096) + 1j * rng.standard_normal(4096)) / np.sqrt(2)
clutter = ar_synthesize([1.6, -0.8], innovation)

model = burg_estimate(clutter, 2)
print("coefficients", np.round(model.coefficients, 3))
print("reflection  ", np.round(model.reflection, 3))
print("error power ", np.round(model.error_power, 3))

# %%
prf = 20_000.0
f, psd = mem_psd(model, prf, grid=1024)
print(f"spectral peak at {f[np.argmax(psd)]:.0f} Hz")


def flatness(x):
    _, p = welch(x, nperseg=256, return_onesided=False)
    return np.exp(np.mean(np.log(p))) / np.mean(p)


e = prediction_error_filter(model, clutter)
print(f"flatness before {flatness(clutter):.3f}, after {flatness(e):.3f}")
