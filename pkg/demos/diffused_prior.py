"""
Alignment with a diffused prior
===============================

The alignment error allowed by no-signaling, as a function of the prior's
diffusion time t, next to the error of the prior itself. This is the data
behind the usual two-curve plot; pipe it into any plotting tool.
"""

# %%
import io
import sys

from nsbounds import cli, stationarity_window

# %%
# The table, produced the same way as `nsbounds diffuse --n 100`.
buf = io.StringIO()
cli.run(["diffuse", "--n", "100", "--t-grid", "0.1:3:15"], stdout=buf)
sys.stdout.write(buf.getvalue())

# %%
# The bound only applies once the step window fits inside the region where
# the prior's penalty keeps rising; n_threshold is the smallest such N.
for t in (0.3, 1.0, 3.0):
    w = stationarity_window(t)
    print(t, round(w.width, 4), w.n_threshold)
