from typing import Any, Dict, List, Sequence, TextIO
import csv
import json

from weyldft.grids.grids import within_hypothesis
from weyldft.grids.models import GridPoint, GridWeight
from weyldft.lattice.models import RootSystemData, SignHom


def points_document(R: RootSystemData, sigma: SignHom, M: int, points: Sequence[GridPoint]) -> Dict[str, Any]:
    return {
        "algebra": R.label,
        "M": M,
        "sigma": sigma.value,
        "within_hypothesis": within_hypothesis(R, sigma, M),
        "count": len(points),
        "points": [{"kac": list(p.kac), "q": list(p.q), "eps": p.eps} for p in points],
    }


def weights_document(R: RootSystemData, sigma: SignHom, M: int, weights: Sequence[GridWeight]) -> Dict[str, Any]:
    return {
        "algebra": R.label,
        "M": M,
        "sigma": sigma.value,
        "within_hypothesis": within_hypothesis(R, sigma, M),
        "count": len(weights),
        "weights": [{"kac": list(w.kac), "h": w.h} for w in weights],
    }


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"


def points_from_document(document: Dict[str, Any]) -> List[GridPoint]:
    M = document["M"]
    return [GridPoint(kac=tuple(p["kac"]), q=tuple(p["q"]), eps=p["eps"], M=M) for p in document["points"]]


def write_points_csv(points: Sequence[GridPoint], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    if not points:
        writer.writerow(["eps"])
        return
    n = len(points[0].q)
    writer.writerow([f"kac_{i}" for i in range(n + 1)] + [f"q_{i}" for i in range(1, n + 1)] + ["eps"])
    for p in points:
        writer.writerow(list(p.kac) + list(p.q) + [p.eps])


def write_weights_csv(weights: Sequence[GridWeight], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    if not weights:
        writer.writerow(["h"])
        return
    n = len(weights[0].kac) - 1
    writer.writerow([f"kac_{i}" for i in range(n + 1)] + ["h"])
    for w in weights:
        writer.writerow(list(w.kac) + [w.h])
