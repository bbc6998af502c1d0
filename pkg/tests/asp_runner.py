"""Locate and run an external clingo for differential tests."""
import importlib.util
import shutil
import subprocess
import sys


def clingo_command():
    exe = shutil.which("clingo")
    if exe:
        return [exe]
    if importlib.util.find_spec("clingo") is not None:
        return [sys.executable, "-m", "clingo"]
    return None


def run_clingo(program: str, timeout=120) -> str:
    cmd = clingo_command()
    # clingo exits 10/20/30 for sat/unsat/exhausted, so the return code is not checked
    proc = subprocess.run(cmd + ["--models=0", "--outf=0", "-"], input=program,
                          capture_output=True, text=True, timeout=timeout)
    return proc.stdout
