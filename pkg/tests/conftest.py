# Test configuration
import pytest
from fastapi.testclient import TestClient

from api.cache import CacheManager
from main import app
from models.params import Params


@pytest.fixture(autouse=True)
def clear_cache():
    """Every test starts with an empty result cache"""
    CacheManager.clear()
    yield
    CacheManager.clear()


@pytest.fixture
def client():
    """
    Create a test client for the FastAPI application
    """
    with TestClient(app) as client:
        yield client


@pytest.fixture
def gaussian():
    """alpha=2, beta=0: the complete-the-square case"""
    return Params.build(2.0, 0.0)


@pytest.fixture
def resonant():
    """alpha=2, beta=-1: a single resonant pair (0, 0)"""
    return Params.build(2.0, -1.0)


@pytest.fixture
def mock_evaluate_request():
    """
    A point evaluation request as a client would send it
    """
    return {
        "alpha": 2.0,
        "beta": {"re": 0.0, "im": 0.0},
        "z": {"re": 0.0, "im": 0.0},
    }
