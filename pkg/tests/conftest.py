import calendar
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--btc-csv", default=None, help="Bitstamp BTC/USD minute CSV for the data-tier checks")


@pytest.fixture(scope="session")
def btc_csv(request):
    path = request.config.getoption("--btc-csv")
    if not path or not Path(path).exists():
        pytest.skip("Bitstamp minute CSV not supplied (use --btc-csv PATH)")
    return Path(path)


def year_start(year: int) -> int:
    return calendar.timegm((year, 1, 1, 0, 0, 0))


def minute_frame(start_ts: int, n_minutes: int, seed: int = 0, drop=(), zero_volume=()) -> pd.DataFrame:
    """Random-walk OHLCV bars, one per minute, with chosen minutes absent or volume-free."""
    rng = np.random.default_rng(seed)
    ts = start_ts + 60 * np.arange(n_minutes, dtype=np.int64)
    close = 20_000 * np.exp(np.cumsum(1e-3 * rng.standard_normal(n_minutes)))
    opn = np.concatenate([[close[0]], close[:-1]])
    spread = np.abs(rng.standard_normal(n_minutes)) * 2.0
    high = np.maximum(opn, close) + spread
    low = np.minimum(opn, close) - spread
    vol = rng.uniform(0.1, 5.0, n_minutes)
    vol[np.asarray(zero_volume, dtype=int)] = 0.0
    df = pd.DataFrame({"Timestamp": ts, "Open": opn, "High": high, "Low": low, "Close": close, "Volume": vol})
    keep = np.ones(n_minutes, dtype=bool)
    keep[np.asarray(drop, dtype=int)] = False
    return df[keep].reset_index(drop=True)


@pytest.fixture
def write_minutes(tmp_path):
    def _write(df: pd.DataFrame, name: str = "minutes.csv") -> Path:
        path = tmp_path / name
        df.to_csv(path, index=False)
        return path

    return _write


# one line per acceptance criterion, printed after the run whatever the capture mode
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
