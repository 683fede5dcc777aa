import subprocess
import sys

import pytest

QMAX = 100_000


def _figure_data(case: str, outdir, quotients) -> str:
    out = str(outdir / f"case{case}.csv")
    subprocess.run(
        [
            sys.executable, "-m", "badpairs", "figure-data",
            "--case", case, "--qmax", str(QMAX),
            "--out", out, "--quotients", str(quotients),
        ],
        check=True,
    )
    return out


@pytest.fixture(scope="session")
def case_csvs(tmp_path_factory):
    """Case A and D record CSVs produced through the upstream CLI."""
    outdir = tmp_path_factory.mktemp("case_data")
    quotients = outdir / "theta_cf.txt"
    return {
        "A": _figure_data("A", outdir, quotients),
        "D": _figure_data("D", outdir, quotients),
    }
