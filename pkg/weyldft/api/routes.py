from fastapi import APIRouter, HTTPException
from typing import Any, Dict, List, Optional
from pydantic import BaseModel
import logging

from weyldft.counting.counting import burnside_count, closed_form
from weyldft.counting.models import CountQuery
from weyldft.errors import GroupTooLarge
from weyldft.grids.grids import point_set, weight_set
from weyldft.grids.serialize import points_document, weights_document
from weyldft.lattice.models import SignHom
from weyldft.lattice.rootdata import check_sign, get_root_data, summary
from weyldft.transforms.models import SampleTable
from weyldft.transforms.transforms import forward, get_transform, hartley_forward
from weyldft.verify.models import VerifyContext
from weyldft.verify.runner import VerificationRunner

logger = logging.getLogger(__name__)

router = APIRouter()

# Keeps finished verification runs for lookup by id
runner = VerificationRunner()


class TransformRequest(BaseModel):
    algebra: str
    sigma: str = "1"
    M: int
    values: List[Any]  # [re, im] pairs, or plain reals
    hartley: bool = False
    allow_large: bool = False


class VerifyRequest(BaseModel):
    algebra: str
    sigma: str = "1"
    M: int
    checks: Optional[List[str]] = None
    seed: int = 0


class CountResponse(BaseModel):
    algebra: str
    sigma: str
    M: int
    closed_form: int
    burnside: int
    enum_points: int
    enum_weights: int
    agree: bool


def _http_error(e: Exception) -> HTTPException:
    """422 for resource limits, 400 for everything the caller got wrong"""
    if isinstance(e, GroupTooLarge):
        return HTTPException(status_code=422, detail=str(e))
    return HTTPException(status_code=400, detail=str(e))


def _resolve(algebra: str, sigma: str):
    R = get_root_data(algebra)
    sign = SignHom.parse(sigma)
    check_sign(R, sign)
    return R, sign


@router.get("/algebras/{label}")
async def get_algebra(label: str):
    """Root data summary: Cartan matrix, marks, Gamma table, m^sigma per admissible sigma"""
    try:
        return summary(get_root_data(label))
    except ValueError as e:
        raise _http_error(e)


@router.get("/points")
def get_points(algebra: str, M: int, sigma: str = "1", relaxed: bool = False):
    try:
        R, sign = _resolve(algebra, sigma)
        return points_document(R, sign, M, point_set(R, sign, M, relaxed))
    except ValueError as e:
        raise _http_error(e)


@router.get("/weights")
def get_weights(algebra: str, M: int, sigma: str = "1", relaxed: bool = False):
    try:
        R, sign = _resolve(algebra, sigma)
        return weights_document(R, sign, M, weight_set(R, sign, M, relaxed))
    except ValueError as e:
        raise _http_error(e)


@router.get("/count", response_model=CountResponse)
def get_count(algebra: str, M: int, sigma: str = "1"):
    """Closed form, Burnside and enumeration sizes side by side"""
    try:
        R, sign = _resolve(algebra, sigma)
        row = {
            "closed_form": closed_form(CountQuery(algebra=R.algebra, sigma=sign, M=M)),
            "burnside": burnside_count(R, sign, M),
            "enum_points": len(point_set(R, sign, M)),
            "enum_weights": len(weight_set(R, sign, M)),
        }
    except ValueError as e:
        raise _http_error(e)
    return CountResponse(
        algebra=R.label,
        sigma=sign.short_name,
        M=M,
        agree=len(set(row.values())) == 1,
        **row
    )


@router.post("/transform")
def run_transform(request: TransformRequest) -> Dict[str, Any]:
    """Forward Fourier or Hartley transform of samples given in point-set order"""
    try:
        R, sign = _resolve(request.algebra, request.sigma)
        transform = get_transform(R, sign, request.M, allow_large=request.allow_large)
        values = SampleTable.from_payload({
            "algebra": R.label,
            "M": request.M,
            "sigma": sign.value,
            "grid": [{"kac": p.kac, "q": p.q, "eps": p.eps} for p in transform.points],
            "values": request.values,
        })
        if request.hartley:
            spectrum = hartley_forward(R, sign, request.M, values, request.allow_large)
        else:
            spectrum = forward(R, sign, request.M, values, request.allow_large)
    except (ValueError, GroupTooLarge) as e:
        raise _http_error(e)
    return spectrum.to_payload()


@router.post("/verify")
def run_verification(request: VerifyRequest) -> Dict[str, Any]:
    try:
        R, sign = _resolve(request.algebra, request.sigma)
    except ValueError as e:
        raise _http_error(e)
    unknown = [name for name in request.checks or [] if name not in runner.registry.checks]
    if unknown:
        raise HTTPException(status_code=404, detail=f"Unknown checks: {', '.join(unknown)}")

    context = VerifyContext(R=R, sigma=sign, M=request.M, seed=request.seed)
    try:
        run = runner.run(context, request.checks)
    except ValueError as e:
        raise _http_error(e)
    return run.model_dump(mode="json")


@router.get("/verify/{run_id}")
async def get_verification(run_id: str):
    run = runner.get_run(run_id)
    if not run:
        raise HTTPException(status_code=404, detail="Verification run not found")
    return run.model_dump(mode="json")


@router.get("/checks")
async def list_checks():
    return {
        "checks": runner.registry.list_checks()
    }


@router.get("/memory/stats")
async def get_memory_stats():
    """Stored verification runs and their log volume"""
    return runner.get_memory_stats()


@router.post("/memory/cleanup")
async def cleanup_memory(keep: int = 0):
    if keep < 0:
        raise HTTPException(status_code=400, detail="keep must be non-negative")
    removed = runner.cleanup(keep)
    return {"removed": removed, **runner.get_memory_stats()}
