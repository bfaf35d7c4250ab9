"""Rebuild the pull-to-slip friction table from the bundled trial sweeps.

Same computation as `cartilab friction <csv>`, driven from the API so the
intermediate slip thresholds are visible too.
"""

from importlib import resources

from cartilab.config import default_config
from cartilab.friction import build_table, read_trials_csv, slip_threshold

text = resources.files("cartilab.data").joinpath(
    "friction_trials.csv").read_text("utf-8")
trials = read_trials_csv(text, default_config().friction_increments_g)

print("slip thresholds:")
for t in trials:
    w, censored = slip_threshold(t)
    tag = "never slipped (censored at heaviest weight)" if censored else "slipped"
    print(f"  {t.condition:24s} {w:g} g  {tag}")

print()
print("friction coefficients (mu = W/N):")
for row in build_table(trials):
    unc = "" if row.mu_uncertainty is None else f" +/- {row.mu_uncertainty:.3f}"
    print(f"  {row.condition:24s} mu {row.display_mu()}{unc}")
