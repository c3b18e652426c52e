"""Generate the frozen 50-observation synthetic dataset and reference values.

The reference values come from statsmodels, which is independent of the
C++ implementation. Run once; the outputs are committed:

    python3 tests/oracle/make_oracle.py
"""
import json
import pathlib

import numpy as np
import statsmodels.api as sm
from statsmodels.tsa.stattools import adfuller
from statsmodels.tsa.vector_ar.vecm import coint_johansen

ROOT = pathlib.Path(__file__).resolve().parents[2]
CSV = ROOT / "data" / "synthetic" / "oracle3.csv"
OUT = ROOT / "tests" / "oracle" / "oracle3_reference.json"

rng = np.random.default_rng(20240917)
n = 50
x = np.cumsum(rng.normal(size=n)) + 5.0
z = np.cumsum(rng.normal(size=n)) - 2.0
u = np.zeros(n)
for t in range(1, n):
    u[t] = 0.4 * u[t - 1] + rng.normal(scale=0.5)
y = 1.0 + 0.5 * x - 0.3 * z + u

# Round so the CSV is the exact input for both implementations.
y, x, z = (np.round(v, 6) for v in (y, x, z))
years = np.arange(1970, 1970 + n)

with CSV.open("w") as f:
    f.write("year,Y,X,Z\n")
    for row in zip(years, y, x, z):
        f.write(f"{row[0]},{row[1]:.6f},{row[2]:.6f},{row[3]:.6f}\n")

ols = sm.OLS(y, sm.add_constant(np.column_stack([x, z]))).fit()
adf = {}
for name, s in (("Y", y), ("X", x), ("Z", z)):
    adf[name] = float(adfuller(s, maxlag=1, autolag=None, regression="c")[0])
joh = coint_johansen(np.column_stack([y, x, z]), det_order=0, k_ar_diff=1)

ref = {
    "generator": "statsmodels " + sm.__version__ if hasattr(sm, "__version__") else "statsmodels",
    "ols": {
        "dependent": "Y",
        "regressors": ["const", "X", "Z"],
        "coefficients": [float(c) for c in ols.params],
        "standard_errors": [float(s) for s in ols.bse],
    },
    "adf_constant_lag1": adf,
    "johansen_case3_difflags1": {
        "order": ["Y", "X", "Z"],
        "eigenvalues": [float(e) for e in joh.eig],
        "trace": [float(e) for e in joh.lr1],
        "maxeig": [float(e) for e in joh.lr2],
    },
}
OUT.write_text(json.dumps(ref, indent=2) + "\n")
print(json.dumps(ref, indent=2))
