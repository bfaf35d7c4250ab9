"""Pull-to-slip friction trials and coefficient tables.

The apparatus loads a frame of known weight N onto the sheet and pulls it
sideways with an increasing counterweight W; the smallest W that moves the
frame gives the static coefficient mu = W/N.  A sweep that never slips
yields a censored lower bound at the largest tested weight.  Weights stay
in grams throughout; mu is their ratio, so no unit layer is needed here.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence


class FrictionDataError(ValueError):
    """Malformed trial data (bad schema, bad sweep, duplicate conditions)."""


@dataclass(frozen=True)
class FrictionTrial:
    """One condition's sweep: (counterweight_g, slipped) in test order.

    increment_g is the water-step granularity used to raise the
    counterweight; it sets the uncertainty of the threshold and may be
    unknown (None).
    """

    condition: str
    normal_load_g: float
    sweep: tuple[tuple[float, bool], ...]
    increment_g: Optional[float] = None

    def __post_init__(self):
        if self.normal_load_g <= 0:
            raise FrictionDataError(f"{self.condition}: normal load must be positive")
        if not self.sweep:
            raise FrictionDataError(f"{self.condition}: empty sweep")
        weights = [w for w, _ in self.sweep]
        if any(w2 <= w1 for w1, w2 in zip(weights, weights[1:])):
            raise FrictionDataError(
                f"{self.condition}: counterweights must be strictly increasing")
        # once the frame slips it keeps slipping at higher weights
        slipped = [s for _, s in self.sweep]
        if any(a and not b for a, b in zip(slipped, slipped[1:])):
            raise FrictionDataError(
                f"{self.condition}: slip flags are not monotone")
        if self.increment_g is not None and self.increment_g <= 0:
            raise FrictionDataError(f"{self.condition}: increment must be positive")


def slip_threshold(trial: FrictionTrial) -> tuple[float, bool]:
    """Smallest counterweight that slipped, or (last tested, censored=True)."""
    for weight, slipped in trial.sweep:
        if slipped:
            return weight, False
    return trial.sweep[-1][0], True


def friction_coefficient(normal_load_g: float, slip_weight_g: float) -> float:
    """mu = W/N at full precision; grams cancel."""
    if normal_load_g <= 0:
        raise FrictionDataError("normal load must be positive")
    if slip_weight_g < 0:
        raise FrictionDataError("slip weight must be non-negative")
    return slip_weight_g / normal_load_g


@dataclass(frozen=True)
class FrictionRow:
    """Derived table row; mu is a lower bound when censored."""

    condition: str
    normal_load_g: float
    slip_weight_g: float
    mu: float
    mu_uncertainty: Optional[float]
    censored: bool

    def display_mu(self, digits: int = 3) -> str:
        prefix = ">= " if self.censored else ""
        return f"{prefix}{self.mu:.{digits}f}"


def build_table(trials: Sequence[FrictionTrial]) -> list[FrictionRow]:
    """One row per condition, in the order given.

    mu_uncertainty = increment/N when the increment is known, else None
    (rendered as "unknown" downstream).
    """
    if not trials:
        raise FrictionDataError("no trials")
    seen: set[str] = set()
    rows: list[FrictionRow] = []
    for trial in trials:
        if trial.condition in seen:
            raise FrictionDataError(f"duplicate condition '{trial.condition}'")
        seen.add(trial.condition)
        w_slip, censored = slip_threshold(trial)
        mu = friction_coefficient(trial.normal_load_g, w_slip)
        unc = (trial.increment_g / trial.normal_load_g
               if trial.increment_g is not None else None)
        rows.append(FrictionRow(condition=trial.condition,
                                normal_load_g=trial.normal_load_g,
                                slip_weight_g=w_slip, mu=mu,
                                mu_uncertainty=unc, censored=censored))
    return rows


# --- CSV / JSON interchange --------------------------------------------------

INPUT_COLUMNS = ("condition", "normal_load_g", "counterweight_g", "slipped")
OUTPUT_COLUMNS = ("condition", "N_g", "W_g", "mu", "mu_unc", "censored")


def read_trials_csv(text: str,
                    increments_g: Optional[Mapping[str, float]] = None) -> list[FrictionTrial]:
    """Parse trial rows; schema `condition,normal_load_g,counterweight_g,slipped`.

    Rows group into one trial per condition, sweep in file order.  The
    per-condition increments come from the config, not the file.  Raises
    FrictionDataError naming the offending line on any schema violation.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise FrictionDataError("empty file") from None
    if tuple(h.strip() for h in header) != INPUT_COLUMNS:
        raise FrictionDataError(
            f"line 1: expected header {','.join(INPUT_COLUMNS)}")

    order: list[str] = []
    loads: dict[str, float] = {}
    sweeps: dict[str, list[tuple[float, bool]]] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # blank line
        if len(row) != 4:
            raise FrictionDataError(f"line {lineno}: expected 4 fields, got {len(row)}")
        condition = row[0].strip()
        if not condition:
            raise FrictionDataError(f"line {lineno}: empty condition label")
        try:
            normal = float(row[1])
            counter = float(row[2])
        except ValueError:
            raise FrictionDataError(f"line {lineno}: non-numeric weight") from None
        flag = row[3].strip()
        if flag not in ("0", "1"):
            raise FrictionDataError(f"line {lineno}: slipped must be 0 or 1, got {flag!r}")
        if condition not in loads:
            order.append(condition)
            loads[condition] = normal
            sweeps[condition] = []
        elif loads[condition] != normal:
            raise FrictionDataError(
                f"line {lineno}: normal load changed within condition '{condition}'")
        sweeps[condition].append((counter, flag == "1"))

    if not order:
        raise FrictionDataError("no data rows")
    increments = increments_g or {}
    trials = []
    for condition in order:
        try:
            trials.append(FrictionTrial(condition=condition,
                                        normal_load_g=loads[condition],
                                        sweep=tuple(sweeps[condition]),
                                        increment_g=increments.get(condition)))
        except FrictionDataError as exc:
            raise FrictionDataError(str(exc)) from None
    return trials


def rows_to_csv(rows: Iterable[FrictionRow]) -> str:
    """Serialize rows with full-precision values; unknown uncertainty is blank."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(OUTPUT_COLUMNS)
    for r in rows:
        writer.writerow([
            r.condition,
            f"{r.normal_load_g:g}",
            f"{r.slip_weight_g:g}",
            repr(r.mu),
            "" if r.mu_uncertainty is None else repr(r.mu_uncertainty),
            int(r.censored),
        ])
    return out.getvalue()


def rows_to_json(rows: Iterable[FrictionRow]) -> str:
    payload = [
        {
            "condition": r.condition,
            "N_g": r.normal_load_g,
            "W_g": r.slip_weight_g,
            "mu": r.mu,
            "mu_unc": r.mu_uncertainty,
            "censored": r.censored,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"
