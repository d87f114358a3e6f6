from fastapi import Depends, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
import logging
import math
import traceback

from mpmath import mp

from . import __version__, config
from .asymptotics import (
    corollary2_Ix,
    corollary3_Ix,
    theorem1_Jx,
    theorem2_Ix,
    theorem3_mean,
)
from .auth import verify_api_key
from .errors import DomainError, ZetaMeansError
from .hurwitz import StripPoint, hurwitz_zeta, kernel_K, modified_hurwitz_zeta
from .lattice import (
    count_A_estimate,
    enumerate_A,
    hyperbola_asymptotic,
    hyperbola_deviation,
    hyperbola_double_sum,
    naive_double_sum,
)
from .meansq_oracle import (
    fourier_representation_Ix,
    integral_Ix,
    integral_Jx,
    large_interval_mean,
)
from .schemas import (
    DensityRequest,
    DensityResponse,
    Estimator,
    EstimateRequest,
    EstimateResponse,
    EvalRequest,
    HyperbolaRequest,
    HyperbolaResponse,
    HyperbolaRow,
    OracleRequest,
    ValueResponse,
)

# ============================================================
# LOGGING SETUP
# ============================================================
logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO),
    format=config.LOG_FORMAT
)
logger = logging.getLogger(__name__)

app = FastAPI(title="zetameans", version=__version__)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


# ============================================================
# REQUEST LOGGING MIDDLEWARE
# ============================================================
@app.middleware("http")
async def log_requests(request: Request, call_next):
    try:
        body = await request.body()
        logger.info(f"📥 INCOMING: {request.method} {request.url.path}")
        logger.debug(f"Body: {body.decode('utf-8', errors='ignore')}")

        response = await call_next(request)

        logger.info(f"📤 RESPONSE: Status {response.status_code}")
        return response

    except Exception as e:
        logger.error(f"🔥 MIDDLEWARE ERROR: {type(e).__name__}: {str(e)}")
        logger.error(traceback.format_exc())
        return JSONResponse(
            status_code=500,
            content={"error": "Middleware error", "error_type": type(e).__name__, "detail": str(e)}
        )


# ============================================================
# ERROR HANDLERS
# ============================================================
@app.exception_handler(ZetaMeansError)
async def library_error(request: Request, exc: ZetaMeansError):
    logger.warning(f"⚠️ {request.url.path}: {type(exc).__name__}: {exc.message}")
    return JSONResponse(status_code=422, content=exc.to_dict())


@app.exception_handler(Exception)
async def unexpected_error(request: Request, exc: Exception):
    logger.error(f"🔥 FATAL ERROR in {request.url.path}: {type(exc).__name__}: {str(exc)}")
    logger.error(traceback.format_exc())
    return JSONResponse(
        status_code=500,
        content={"error": str(exc), "error_type": type(exc).__name__, "detail": {}}
    )


def _pair(value) -> list:
    value = complex(value)
    return [value.real, value.imag]


def _second_point(req, sp: StripPoint):
    if req.v_sigma is None and req.v_t is None:
        return sp.conjugate()
    return mp.mpc(req.v_sigma if req.v_sigma is not None else sp.sigma, req.v_t if req.v_t is not None else -sp.t)


# ============================================================
# ENDPOINTS
# ============================================================

@app.get("/")
def root():
    logger.info("✅ Health check endpoint hit")
    return {
        "status": "ok",
        "service": "zetameans",
        "version": __version__,
        "message": "POST /eval, /oracle, /estimate, /density or /hyperbola"
    }


@app.post("/eval", response_model=ValueResponse, dependencies=[Depends(verify_api_key)])
def eval_endpoint(req: EvalRequest):
    policy = req.policy.to_policy()
    s = complex(req.sigma, req.t)
    if req.function == "kernel":
        value = kernel_K(s, policy)
    elif req.function == "modified":
        value = modified_hurwitz_zeta(s, req.alpha, req.x, policy)
    else:
        value = hurwitz_zeta(s, req.alpha, policy)
    logger.info(f"🔢 eval {req.function}: s={s} -> {complex(value)}")
    return ValueResponse(value=_pair(value), detail={"function": req.function, "policy": policy.to_dict()})


@app.post("/oracle", response_model=ValueResponse, dependencies=[Depends(verify_api_key)])
def oracle_endpoint(req: OracleRequest):
    policy = req.policy.to_policy()
    sp = StripPoint(req.sigma, req.t)
    if req.quantity == "Jx":
        result = integral_Jx(sp.s, _second_point(req, sp), req.x, policy)
    elif req.quantity == "large_interval":
        result = large_interval_mean(sp, policy, config.WORKERS)
    else:
        result = integral_Ix(sp, req.x, policy)
    return ValueResponse(value=_pair(result.value), detail=result.to_dict())


@app.post("/estimate", response_model=EstimateResponse, dependencies=[Depends(verify_api_key)])
def estimate_endpoint(req: EstimateRequest):
    """Estimator value plus its oracle residual (the oracle is skipped for thm3)."""
    policy = req.policy.to_policy()
    sp = StripPoint(req.sigma, req.t)
    estimator = Estimator(req.estimator)
    oracle = None

    if estimator == Estimator.THM1:
        v = _second_point(req, sp)
        report = theorem1_Jx(sp.s, v, req.x, req.n_order, policy)
        oracle = integral_Jx(sp.s, v, req.x, policy).value
    elif estimator == Estimator.THM3:
        report = theorem3_mean(req.sigma, req.t, policy)
    elif estimator == Estimator.FOURIER:
        y = req.t / (2 * math.pi * req.x)
        value = fourier_representation_Ix(sp, req.x, req.m_order, policy, complete_tail=req.m_order + 1 > y)
        oracle = integral_Ix(sp, req.x, policy).value
        residual = abs(complex(oracle) - complex(value))
        return EstimateResponse(
            estimator=estimator,
            estimate={"value": _pair(value), "terms_used": req.m_order},
            oracle=_pair(oracle),
            residual=residual,
        )
    else:
        if estimator == Estimator.COR2:
            report = corollary2_Ix(sp, req.x, req.n_order, policy)
        elif estimator == Estimator.COR3:
            if req.sigma != 0.5:
                raise DomainError("cor3 is the critical-line estimator; σ must be 1/2", sigma=req.sigma)
            report = corollary3_Ix(req.t, req.x, policy)
        else:
            report = theorem2_Ix(sp, req.x, req.eta, req.correction_factor, policy)
        oracle = integral_Ix(sp, req.x, policy).value

    residual = None if oracle is None else abs(complex(oracle) - complex(report.value))
    logger.info(f"🎯 estimate {estimator.value}: residual={residual}")
    return EstimateResponse(
        estimator=estimator,
        estimate=report.to_dict(),
        oracle=None if oracle is None else _pair(oracle),
        residual=residual,
    )


@app.post("/density", response_model=DensityResponse, dependencies=[Depends(verify_api_key)])
def density_endpoint(req: DensityRequest):
    found = enumerate_A(req.t, req.eta)
    return DensityResponse(
        t=req.t,
        eta=req.eta,
        count=len(found),
        estimate=count_A_estimate(req.t, req.eta),
        members=found.members if req.include_members else None,
    )


@app.post("/hyperbola", response_model=HyperbolaResponse, dependencies=[Depends(verify_api_key)])
def hyperbola_endpoint(req: HyperbolaRequest):
    rows = []
    for n in req.n_values:
        total = hyperbola_double_sum(n, req.sigma)
        rows.append(HyperbolaRow(
            n=n,
            sigma=req.sigma,
            total=total,
            asymptotic=hyperbola_asymptotic(n, req.sigma),
            deviation=hyperbola_deviation(n, req.sigma, total),
            naive=naive_double_sum(n, req.sigma) if req.check_naive else None,
        ))
    return HyperbolaResponse(rows=rows)
