# Main application entry point
import logging

import uvicorn
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from api.config import API_CONFIG, LOGGING_CONFIG, SERVICE_CONFIG
from api.routes import router as api_router
from models.response import StatusResponse

# Configure logging
logging.basicConfig(
    level=getattr(logging, LOGGING_CONFIG["level"]),
    format=LOGGING_CONFIG["format"]
)
logger = logging.getLogger(__name__)

# Create FastAPI application
app = FastAPI(
    title=API_CONFIG["title"],
    description=API_CONFIG["description"],
    version=API_CONFIG["version"],
    docs_url=API_CONFIG["docs_url"],
    redoc_url=API_CONFIG["redoc_url"]
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

# Include API router
app.include_router(api_router)


# Exception handler for HTTP exceptions
@app.exception_handler(StarletteHTTPException)
async def http_exception_handler(request: Request, exc: StarletteHTTPException):
    return JSONResponse(
        status_code=exc.status_code,
        content={"detail": exc.detail},
    )


# Malformed payloads are parameter errors, not numeric failures
@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    messages = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors())
    return JSONResponse(
        status_code=400,
        content={"detail": messages, "error_code": "ValidationError"},
    )


# Root endpoint
@app.get("/")
async def root():
    return {
        "name": API_CONFIG["title"],
        "version": API_CONFIG["version"],
        "status": "operational"
    }


# Health check endpoint
@app.get("/health", response_model=StatusResponse)
async def health_check():
    return {
        "status": "healthy",
        "version": API_CONFIG["version"]
    }


if __name__ == "__main__":
    uvicorn.run(
        "main:app",
        host=SERVICE_CONFIG["host"],
        port=SERVICE_CONFIG["port"],
        reload=SERVICE_CONFIG["reload"]
    )
