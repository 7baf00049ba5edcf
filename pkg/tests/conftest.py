import os

import pytest
from hypothesis import settings

# no example database: avoids file locking in sandboxed filesystems and
# keeps runs deterministic
settings.register_profile("qsl3", database=None, deadline=None)
settings.load_profile("qsl3")


@pytest.fixture(scope="session", autouse=True)
def _session_cache_dir(tmp_path_factory):
    """Point the involution disk cache at a session-scoped directory."""
    d = tmp_path_factory.mktemp("rho_cache")
    old = os.environ.get("QSL3_CACHE_DIR")
    os.environ["QSL3_CACHE_DIR"] = str(d)
    yield d
    if old is None:
        os.environ.pop("QSL3_CACHE_DIR", None)
    else:
        os.environ["QSL3_CACHE_DIR"] = old
