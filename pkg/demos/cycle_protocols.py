# Run the three bundled load/wipe/unload protocols and compare how the
# reservoir holds up: a base sheet keeps the inserts fed, a bare capsule
# starves, and a heavier press after depletion still squeezes more out.

from importlib import resources

from cartilab.cycles import load_protocol, per_cycle_exudation, run_protocol


def run(name):
    text = resources.files("cartilab.data").joinpath(name).read_text("utf-8")
    protocol, state = load_protocol(text)
    records = run_protocol(protocol, state)
    return per_cycle_exudation(records), records


for name, story in (
    ("five_cycles_base.json", "8 lb x5 with base sheet"),
    ("five_cycles_nobase.json", "8 lb x5, no base sheet, tiny capsule pool"),
    ("step_8_to_15.json", "8 lb x3 then one 15 lb press"),
):
    cycles, records = run(name)
    series = ", ".join(f"{v:.5f}" for v in cycles)
    print(f"{story}:")
    print(f"  per-cycle exudation (cm3): {series}")
    mus = [r.mu_est for r in records if r.action == "load"]
    print(f"  mu estimate at each press: "
          + ", ".join(f"{m:.3f}" for m in mus))
    print()
