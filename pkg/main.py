"""
RAAG Toolkit Backend - HTTP surface for symmetric automorphism computations
Graph reports, Whitehead partitions, spine ranks, norm descent and move graphs
Version: 1.0.0
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from dotenv import load_dotenv
from datetime import datetime, timezone
import logging

from config import configure_logging, get_settings

# Load environment
load_dotenv()

# Setup logging
configure_logging()
logger = logging.getLogger(__name__)

VERSION = "1.0.0"

# Create FastAPI app
app = FastAPI(
    title="RAAG Toolkit API",
    version=VERSION,
    description="Whitehead partitions, compatible-set ranks and norm descent for right-angled Artin groups",
)

# ============================================================================
# IMPORT AND INCLUDE ROUTERS
# ============================================================================

try:
    from raag_routes import router as raag_router
    app.include_router(raag_router)
    logger.info("✅ RAAG routes loaded")
except ImportError as e:
    logger.warning(f"⚠️ RAAG routes not loaded: {e}")

# ============================================================================
# CORS
# ============================================================================
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)

# ============================================================================
# ENDPOINTS
# ============================================================================


@app.get("/")
async def root():
    """Root endpoint - Service info"""
    return {
        "service": "RAAG Toolkit API",
        "version": VERSION,
        "status": "running",
        "endpoints": {
            "graph_info": "POST /api/v1/raag/graph-info",
            "partitions": "POST /api/v1/raag/partitions",
            "ranks": "POST /api/v1/raag/ranks",
            "vcd": "POST /api/v1/raag/vcd",
            "minimize": "POST /api/v1/raag/minimize",
            "explore": "POST /api/v1/raag/explore",
            "health": "GET /api/health",
        },
    }


@app.get("/api/health")
async def health():
    """Health check endpoint"""
    from cache_service import get_cache

    settings = get_settings()
    return {
        "status": "ok",
        "version": VERSION,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "settings": {
            "tail_bound": settings.tail_bound,
            "search_budget": settings.search_budget,
            "explore_depth_limit": settings.explore_depth_limit,
        },
        "cache": get_cache().get_stats() if settings.cache_enabled else "disabled",
    }


# ============================================================================
# STARTUP
# ============================================================================


@app.on_event("startup")
async def startup_event():
    """Startup event"""
    settings = get_settings()
    logger.info("=" * 70)
    logger.info("🚀 RAAG Toolkit Backend Starting...")
    logger.info(f"🔢 Tail bound: {settings.tail_bound}")
    logger.info(f"🔍 Search budget: {settings.search_budget} nodes")
    logger.info(f"💾 Cache: {'enabled' if settings.cache_enabled else 'disabled'}")
    logger.info("=" * 70)


# ============================================================================
# MAIN
# ============================================================================

if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=8000)
