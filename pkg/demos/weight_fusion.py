"""Compare subjective, objective, and fused indicator weights on the demo data.

Run: python3 demos/weight_fusion.py
"""

from pathlib import Path

from cloudmcdm.pipeline import PipelineConfig, compute_weights, load_inputs

DEMO = Path(__file__).resolve().parents[1] / "data" / "demo"

cfg = PipelineConfig.from_json(DEMO / "config_before.json")
inputs = load_inputs(cfg)
ws = compute_weights(inputs, cfg)

print(f"fusion coefficients theta = ({ws.theta[0]:.4f}, {ws.theta[1]:.4f})")
print(f"{'criterion':<10}{'subjective':>12}{'objective':>12}{'combined':>12}")
for cid in ws.criterion["subjective"].indicator_ids:
    print(f"{cid:<10}"
          f"{ws.criterion['subjective'].as_dict()[cid]:>12.4f}"
          f"{ws.criterion['objective'].as_dict()[cid]:>12.4f}"
          f"{ws.criterion['combined'].as_dict()[cid]:>12.4f}")

# the five most influential leaf indicators under the fused weighting
top = sorted(ws.global_combined.as_dict().items(), key=lambda kv: -kv[1])[:5]
print("\ntop 5 leaf indicators by combined weight:")
for leaf, weight in top:
    print(f"  {leaf}: {weight:.4f}")
