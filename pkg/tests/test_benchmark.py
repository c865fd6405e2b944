import subprocess
import sys
from pathlib import Path

SCRIPT = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"


def test_benchmark_runs_and_backends_agree():
    out = subprocess.run([sys.executable, str(SCRIPT), "--quick", "--repeat", "1"],
                         capture_output=True, text=True, timeout=300)
    assert out.returncode == 0, out.stderr
    assert "schreier_sims n=12" in out.stdout
