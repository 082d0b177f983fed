"""
RAAG Routes - FastAPI endpoints mirroring the CLI

Endpoints:
- POST /api/v1/raag/graph-info - Links, classes, principal and maximal vertices
- POST /api/v1/raag/partitions - Partitions based at a vertex
- POST /api/v1/raag/ranks - M(V), M(L), MΣ(V), MΣ(L) with witnesses
- POST /api/v1/raag/vcd - vcd of ΣOut
- POST /api/v1/raag/minimize - Greedy Whitehead descent of a marking
- POST /api/v1/raag/explore - Local Whitehead move graph as DOT
"""

from typing import Any, Dict, List, Optional
import logging

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field
from starlette.concurrency import run_in_threadpool

from defining_graph import DefiningGraph, load_graph, order_report
from raag_automorphisms import load_automorphism
from raag_errors import DomainError, ParseError, RaagError
from reports import graph_info_text, minimize_text, partitions_text
from symmetric_spine import local_explore, rank_report, vcd_symout
from whitehead_norms import identity_salvetti, load_class_set, marked_salvetti, minimize
from whitehead_partitions import enumerate_partitions

# Setup logging
logger = logging.getLogger(__name__)

# Create router
router = APIRouter(prefix="/api/v1/raag", tags=["RAAG"])


# ============================================================================
# PYDANTIC MODELS
# ============================================================================

class GraphRequest(BaseModel):
    """Graph file contents ('vertices:' and 'edge:' lines)"""
    graph: str = Field(..., description="Graph file text")


class PartitionsRequest(GraphRequest):
    base: str
    symmetric: bool = False


class RanksRequest(GraphRequest):
    budget: Optional[int] = Field(None, gt=0, description="Clique search node limit")


class MinimizeRequest(GraphRequest):
    automorphism: str = Field(..., description="Automorphism file text")
    classes: str = Field(..., description="Class-set file text, one word per line")
    tail_bound: Optional[int] = Field(None, ge=0)


class ExploreRequest(GraphRequest):
    depth: int = Field(1, ge=0)
    symmetric: bool = False


class GraphInfoResponse(BaseModel):
    success: bool
    order: Dict[str, Any]
    report: str


class PartitionsResponse(BaseModel):
    success: bool
    base: str
    count: int
    partitions: List[Dict[str, Any]]
    report: str


class RanksResponse(BaseModel):
    success: bool
    ranks: Dict[str, Any]
    report: str


class VcdResponse(BaseModel):
    success: bool
    vcd: int


class MinimizeResponse(BaseModel):
    success: bool
    steps: List[Dict[str, Any]]
    initial_prefix: str
    final_prefix: str
    marking: str
    report: str


class ExploreResponse(BaseModel):
    success: bool
    nodes: int
    edges: int
    dot: str


# ============================================================================
# HELPER FUNCTIONS
# ============================================================================

def _http_error(e: RaagError) -> HTTPException:
    """Parse errors -> 400, domain errors -> 422, budget/undecided -> 409"""
    if isinstance(e, ParseError):
        status = 400
    elif isinstance(e, DomainError):
        status = 422
    else:
        status = 409
    logger.error(f"❌ {type(e).__name__}: {e}")
    return HTTPException(
        status_code=status,
        detail={"error": type(e).__name__, "message": str(e), "exit_code": e.exit_code},
    )


def _graph(request: GraphRequest) -> DefiningGraph:
    return load_graph(request.graph)


# ============================================================================
# ENDPOINTS
# ============================================================================

@router.post("/graph-info", response_model=GraphInfoResponse)
async def graph_info(request: GraphRequest):
    try:
        g = _graph(request)
        return GraphInfoResponse(
            success=True, order=order_report(g).to_dict(), report=graph_info_text(g)
        )
    except RaagError as e:
        raise _http_error(e)


@router.post("/partitions", response_model=PartitionsResponse)
async def partitions(request: PartitionsRequest):
    try:
        g = _graph(request)
        found = enumerate_partitions(g, request.base, symmetric_only=request.symmetric)
        return PartitionsResponse(
            success=True,
            base=request.base,
            count=len(found),
            partitions=[p.to_dict() for p in found],
            report=partitions_text(found),
        )
    except RaagError as e:
        raise _http_error(e)


@router.post("/ranks", response_model=RanksResponse)
async def ranks(request: RanksRequest):
    """Exact clique searches; served from Redis when caching is enabled"""
    try:
        g = _graph(request)
        report = await run_in_threadpool(rank_report, g, request.budget)
        return RanksResponse(success=True, ranks=report.to_dict(), report=report.text())
    except RaagError as e:
        raise _http_error(e)


@router.post("/vcd", response_model=VcdResponse)
async def vcd(request: RanksRequest):
    try:
        g = _graph(request)
        return VcdResponse(success=True, vcd=await run_in_threadpool(vcd_symout, g, request.budget))
    except RaagError as e:
        raise _http_error(e)


@router.post("/minimize", response_model=MinimizeResponse)
async def minimize_marking(request: MinimizeRequest):
    try:
        g = _graph(request)
        sigma = marked_salvetti(load_automorphism(g, request.automorphism))
        classes = load_class_set(g, request.classes)
        result = await run_in_threadpool(minimize, sigma, classes, request.tail_bound)

        logger.info(f"Descent: {len(result.steps)} steps, final {result.final_prefix}")
        return MinimizeResponse(
            success=True,
            steps=[s.to_dict() for s in result.steps],
            initial_prefix=str(result.initial_prefix),
            final_prefix=str(result.final_prefix),
            marking=result.final.marking.text(),
            report=minimize_text(result),
        )
    except RaagError as e:
        raise _http_error(e)


@router.post("/explore", response_model=ExploreResponse)
async def explore(request: ExploreRequest):
    try:
        g = _graph(request)
        graph = await run_in_threadpool(
            local_explore, identity_salvetti(g), request.depth, request.symmetric
        )
        return ExploreResponse(
            success=True, nodes=len(graph.nodes), edges=len(graph.edges), dot=graph.to_dot()
        )
    except RaagError as e:
        raise _http_error(e)
