import logging

from fastapi import HTTPException, Security, status
from fastapi.security.api_key import APIKeyHeader

from . import config

logger = logging.getLogger(__name__)

api_key_scheme = APIKeyHeader(name="x-api-key", auto_error=False)


def verify_api_key(api_key: str = Security(api_key_scheme)):
    """
    Optional API key validation for the numeric endpoints:
    - API_KEY unset or empty → every request passes
    - no x-api-key header → allowed (local sweeps, notebooks)
    - wrong key → 403
    """
    expected = config.API_KEY
    if not expected or not api_key:
        return api_key
    if api_key != expected:
        logger.warning("🔒 rejected request with an invalid x-api-key")
        raise HTTPException(
            status_code=status.HTTP_403_FORBIDDEN,
            detail="Invalid API key",
        )
    return api_key
