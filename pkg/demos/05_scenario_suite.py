"""Run the full bundled scenario suite through the library API and show
each scenario's outcome, plus the in-flight prediction-error curve for
the trajectory-prediction scenarios.

Run:
    python demos/05_scenario_suite.py
"""

import numpy as np

from catchsim import bundled_config, final_prediction_error, run_scenario
from catchsim.harness import scenario_expectation

DESCRIPTIONS = {
    "A": "fixed ball, chase, yaw off",
    "B": "moving ball, chase, yaw off (expected to lose it)",
    "C": "moving ball, chase, yaw on",
    "D": "thrown ball, nearest reachable predicted point",
    "E": "thrown ball, earliest reachable predicted point",
    "planar2d": "plane-restricted crossing prediction",
}

results = {}
print(f"{'scenario':10s} {'outcome':14s} {'t_int':>6s} {'min_d':>6s} {'final_err':>9s}  expected?")
for sid in ("A", "B", "C", "D", "E", "planar2d"):
    cfg = bundled_config(sid)
    res = run_scenario(cfg)
    results[sid] = res
    ok, _ = scenario_expectation(cfg, res)
    t_int = f"{res.interception_time:.2f}" if res.interception_time else "-"
    ferr = final_prediction_error(res)
    ferr = f"{ferr:.3f}" if ferr is not None else "-"
    print(f"{sid:10s} {res.termination_reason:14s} {t_int:>6s} {res.min_distance:6.3f} {ferr:>9s}  "
          f"{'yes' if ok else 'NO'}   ({DESCRIPTIONS[sid]})")

print("\nPrediction error over the flight (D, E, planar2d):")
for sid in ("D", "E", "planar2d"):
    errs = [r.prediction_error for r in results[sid].records if r.prediction_error is not None]
    q = max(1, len(errs) // 4)
    print(f"  {sid:9s} first-quarter mean {np.mean(errs[:q]):.3f} m -> last-quarter mean {np.mean(errs[-q:]):.3f} m "
          f"({len(errs)} predictions)")
print("Predictions start rough (a two-frame window fit) and correct in flight.")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    for sid, color in (("D", "tab:blue"), ("E", "tab:orange"), ("planar2d", "tab:green")):
        pts = [(r.time, r.prediction_error) for r in results[sid].records if r.prediction_error is not None]
        ts, es = zip(*pts)
        axes[0].plot(ts, es, ".-", color=color, label=sid, lw=1)
    axes[0].set_xlabel("time [s]")
    axes[0].set_ylabel("prediction error [m]")
    axes[0].set_title("Predicted intercept point vs real trajectory")
    axes[0].legend()
    axes[0].grid(alpha=0.3)

    res = results["D"]
    ball = np.array([r.ball_position for r in res.records])
    uav = np.array([r.uav_position for r in res.records])
    axes[1].plot(ball[:, 0], ball[:, 2], ".-", color="tab:red", label="ball", lw=1)
    axes[1].plot(uav[:, 0], uav[:, 2], ".-", color="black", label="UAV", lw=1)
    axes[1].set_xlabel("x [m]")
    axes[1].set_ylabel("z [m]")
    axes[1].set_title("Scenario D interception (x-z view)")
    axes[1].legend()
    axes[1].grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig("demo_scenario_suite.png", dpi=120)
    print("\nSaved demo_scenario_suite.png")
except ImportError:
    print("\n(matplotlib not available; skipping the plot)")
