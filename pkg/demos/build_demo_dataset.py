"""Regenerate the bundled synthetic demo dataset under data/demo/.

A two-scenario rural energy-system assessment: 7 criteria, 34 leaf indicators,
judgment matrices built from target weights with bounded perturbation, an
8-object raw data matrix for the objective weights, and 200 rating samples per
indicator per scenario. The "after" scenario shifts ratings up and tightens
their spread, so the pre/post comparison is directional by construction.

Deterministic: fixed seeds, formatted output. Run from the repo root:

    python3 demos/build_demo_dataset.py
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from cloudmcdm.iahp import SAATY_VALUES

OUT = Path(__file__).resolve().parents[1] / "data" / "demo"

SCALE_TOKENS = ["1/9", "1/8", "1/7", "1/6", "1/5", "1/4", "1/3", "1/2",
                "1", "2", "3", "4", "5", "6", "7", "8", "9"]

HIERARCHY = {
    "id": "RIES", "label": "Rural integrated energy system performance",
    "children": [
        {"id": "C1", "label": "Energy efficiency", "children": [
            {"id": "C11", "label": "Integrated energy utilization rate", "direction": "benefit"},
            {"id": "C12", "label": "System exergy efficiency", "direction": "benefit"},
            {"id": "C13", "label": "Renewable energy accommodation rate", "direction": "benefit"},
            {"id": "C14", "label": "Equipment utilization rate", "direction": "benefit"},
            {"id": "C15", "label": "Biomass energy output ratio", "direction": "benefit"},
        ]},
        {"id": "C2", "label": "Energy supply", "children": [
            {"id": "C21", "label": "User satisfaction index", "direction": "benefit"},
            {"id": "C22", "label": "Power sales loss", "direction": "cost"},
            {"id": "C23", "label": "End-user energy quality", "direction": "benefit"},
            {"id": "C24", "label": "Supply reliability", "direction": "benefit"},
        ]},
        {"id": "C3", "label": "Low-carbon sustainability", "children": [
            {"id": "C31", "label": "GHG emissions", "direction": "cost"},
            {"id": "C32", "label": "SOx emissions", "direction": "cost"},
            {"id": "C33", "label": "NOx emissions", "direction": "cost"},
            {"id": "C34", "label": "PM emissions", "direction": "cost"},
        ]},
        {"id": "C4", "label": "Environmental impact", "children": [
            {"id": "C41", "label": "Noise impact", "direction": "cost"},
            {"id": "C42", "label": "Electromagnetic impact", "direction": "cost"},
            {"id": "C43", "label": "Atmospheric impact", "direction": "cost"},
            {"id": "C44", "label": "Water environment impact", "direction": "cost"},
            {"id": "C45", "label": "Ecological impact", "direction": "cost"},
        ]},
        {"id": "C5", "label": "Energy economy", "children": [
            {"id": "C51", "label": "Life cycle cost", "direction": "cost"},
            {"id": "C52", "label": "Return on investment", "direction": "benefit"},
            {"id": "C53", "label": "Payback period", "direction": "cost"},
            {"id": "C54", "label": "Levelized cost of energy", "direction": "cost"},
            {"id": "C55", "label": "Energy intensity", "direction": "cost"},
        ]},
        {"id": "C6", "label": "Social benefits", "children": [
            {"id": "C61", "label": "Employment generation rate", "direction": "benefit"},
            {"id": "C62", "label": "Poverty alleviation index", "direction": "benefit"},
            {"id": "C63", "label": "Industrial value-added rate", "direction": "benefit"},
            {"id": "C64", "label": "Public green mobility rate", "direction": "benefit"},
            {"id": "C65", "label": "EV charging coverage", "direction": "benefit"},
        ]},
        {"id": "C7", "label": "System development", "children": [
            {"id": "C71", "label": "Storage configuration ratio", "direction": "benefit"},
            {"id": "C72", "label": "Decentralization index", "direction": "benefit"},
            {"id": "C73", "label": "Grid upgrade delay", "direction": "cost"},
            {"id": "C74", "label": "Rural electrification rate", "direction": "benefit"},
            {"id": "C75", "label": "Energy self-consumption rate", "direction": "benefit"},
            {"id": "C76", "label": "Energy consumption per output", "direction": "cost"},
        ]},
    ],
}

# target criterion weights: low-carbon and economy heavy, social light
CRITERION_TARGETS = np.array([0.16, 0.13, 0.21, 0.12, 0.19, 0.07, 0.12])


def scale_token(v: float) -> str:
    return SCALE_TOKENS[int(np.argmin(np.abs(SAATY_VALUES - v)))]


def judgment_from_weights(w: np.ndarray, rng: np.random.Generator, wobble: int = 1) -> list[list[str]]:
    """Nearest-scale consistent matrix with a bounded random knot shift per cell."""
    n = len(w)
    rows = [["1"] * n for _ in range(n)]
    for i in range(n):
        for k in range(i + 1, n):
            idx = int(np.argmin(np.abs(SAATY_VALUES - w[i] / w[k])))
            idx = int(np.clip(idx + rng.integers(-wobble, wobble + 1), 0, 16))
            rows[i][k] = SCALE_TOKENS[idx]
            rows[k][i] = SCALE_TOKENS[16 - idx]
    return rows


def write_csv(path: Path, header: list[str] | None, rows) -> None:
    lines = []
    if header is not None:
        lines.append(",".join(header))
    lines += [",".join(str(c) for c in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def leaf_ids() -> list[str]:
    return [leaf["id"] for crit in HIERARCHY["children"] for leaf in crit["children"]]


def main() -> None:
    rng = np.random.default_rng(20250801)
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "judgment").mkdir(exist_ok=True)

    (OUT / "hierarchy.json").write_text(
        json.dumps({"root": HIERARCHY}, indent=2) + "\n", encoding="utf-8"
    )
    (OUT / "scheme.json").write_text(
        json.dumps({
            "he_ratio": 0.1,
            "bands": [
                {"label": "poor", "lower": 0, "upper": 60},
                {"label": "fair", "lower": 60, "upper": 75},
                {"label": "good", "lower": 75, "upper": 85},
                {"label": "excellent", "lower": 85, "upper": 100},
            ],
        }, indent=2) + "\n", encoding="utf-8"
    )

    write_csv(OUT / "judgment" / "criteria.csv", None,
              judgment_from_weights(CRITERION_TARGETS, rng))
    matrices = {}
    for crit in HIERARCHY["children"]:
        n = len(crit["children"])
        w = rng.uniform(0.6, 2.4, n)
        rows = judgment_from_weights(w / w.sum(), rng)
        name = f"{crit['id']}.csv"
        write_csv(OUT / "judgment" / name, None, rows)
        matrices[crit["id"]] = f"judgment/{name}"

    # raw data matrix: 8 observation sites, plausible heterogeneous units
    leaves = leaf_ids()
    sites = [f"site{k + 1}" for k in range(8)]
    base = rng.uniform(10.0, 900.0, len(leaves))
    spread = rng.uniform(0.08, 0.35, len(leaves))
    data = base * (1.0 + spread * rng.standard_normal((len(sites), len(leaves))))
    data = np.abs(data)
    write_csv(OUT / "indicators.csv", ["site"] + leaves,
              [[sid] + [f"{v:.4f}" for v in row] for sid, row in zip(sites, data)])

    # rating samples: "after" lifts the center and tightens the spread
    n_samples = 200
    ex_pre = rng.uniform(72.0, 88.0, len(leaves))
    en_pre = rng.uniform(5.0, 8.0, len(leaves))
    he_pre = rng.uniform(2.2, 3.2, len(leaves))
    ex_post = np.minimum(91.0, ex_pre + rng.uniform(3.0, 7.0, len(leaves)))
    en_post = en_pre * rng.uniform(0.60, 0.80, len(leaves))
    he_post = he_pre * rng.uniform(0.45, 0.70, len(leaves))

    for tag, ex, en, he in (("before", ex_pre, en_pre, he_pre), ("after", ex_post, en_post, he_post)):
        samples = np.empty((n_samples, len(leaves)))
        for j in range(len(leaves)):
            enp = rng.normal(en[j], he[j], n_samples)
            while (enp <= 0).any():
                bad = enp <= 0
                enp[bad] = rng.normal(en[j], he[j], int(bad.sum()))
            samples[:, j] = np.clip(rng.normal(ex[j], enp), 0.0, 100.0)
        write_csv(OUT / f"ratings_{tag}.csv", ["sample"] + leaves,
                  [[f"s{k + 1}"] + [f"{v:.4f}" for v in row] for k, row in enumerate(samples)])

    common = {
        "hierarchy": "hierarchy.json",
        "criterion_matrix": "judgment/criteria.csv",
        "indicator_matrices": matrices,
        "data": "indicators.csv",
        "scheme": "scheme.json",
        "seed": 20250801,
        "droplets": 20000,
        "aggregation": "linear",
        "sigma": 0.8,
        "tau": 0.1,
        "max_iter": 20,
    }
    for tag in ("before", "after"):
        doc = dict(common, scenario=tag, ratings=f"ratings_{tag}.csv")
        (OUT / f"config_{tag}.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"demo dataset written to {OUT}")


if __name__ == "__main__":
    main()
