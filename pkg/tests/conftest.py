"""Pytest configuration and fixtures"""

import pytest
from fastapi.testclient import TestClient

from app.caching.cost import AccountingMode, CostParams
from app.caching.popularity import build_catalog
from app.main import app


@pytest.fixture(scope="function")
def client():
    """Test client fixture"""
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture(scope="session")
def tiny_catalog():
    """F=8 uniform catalog of the hand-checked instance N=2, M=2"""
    return build_catalog(8, 0.0)


@pytest.fixture(scope="session")
def default_catalog():
    """F=500, s=0.8 catalog of the reference scenario"""
    return build_catalog(500, 0.8)


@pytest.fixture(scope="session")
def per_request_costs():
    """alpha=1, mu_BR=4, per-request accounting"""
    return CostParams(alpha=1.0, mu_br=4.0, mode=AccountingMode.PER_REQUEST)


@pytest.fixture(scope="session")
def literal_costs():
    """alpha=1, mu_BR=4, paper-literal accounting"""
    return CostParams(alpha=1.0, mu_br=4.0, mode=AccountingMode.PAPER_LITERAL)
