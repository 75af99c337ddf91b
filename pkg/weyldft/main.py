from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
import logging

from weyldft import __version__
from weyldft.api.routes import router
from weyldft.config import get_settings

# Configure logging
logging.basicConfig(level=get_settings().log_level)
logger = logging.getLogger(__name__)

# Create FastAPI app
app = FastAPI(
    title="Weyl DFT API",
    description="Dual-root lattice grids, orbit-function transforms and their verification",
    version=__version__
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include API routes
app.include_router(router, prefix="/api/v1")


@app.get("/")
async def root():
    """Root endpoint with API information"""
    return {
        "message": "Weyl DFT API",
        "version": __version__,
        "docs": "/docs",
        "endpoints": {
            "algebra": "GET /api/v1/algebras/{label}",
            "points": "GET /api/v1/points?algebra=A2&sigma=1&M=7",
            "weights": "GET /api/v1/weights?algebra=A2&sigma=1&M=7",
            "count": "GET /api/v1/count?algebra=A2&sigma=1&M=7",
            "transform": "POST /api/v1/transform",
            "verify": "POST /api/v1/verify",
            "verify_run": "GET /api/v1/verify/{run_id}",
            "list_checks": "GET /api/v1/checks",
            "memory_stats": "GET /api/v1/memory/stats",
            "memory_cleanup": "POST /api/v1/memory/cleanup"
        }
    }


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy"}


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
