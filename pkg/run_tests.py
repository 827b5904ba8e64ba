#!/usr/bin/env python3
"""
Run the PSO-JobShop test suite

    python run_tests.py            fast suite with coverage
    python run_tests.py --slow     include the LA suite checks (needs data/orlib/)
"""

import os
import sys


def run_tests(argv):
    src_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src')
    if src_path not in sys.path:
        sys.path.insert(0, src_path)

    try:
        import pytest
    except ImportError:
        print("pytest is not installed; run: pip install -e \".[dev]\"")
        return 1

    include_slow = "--slow" in argv
    extra = [arg for arg in argv if arg != "--slow"]

    args = ["tests/", "-v", "--cov=src", "--cov-report=term-missing", *extra]
    if not include_slow:
        args += ["-m", "not slow"]

    exit_code = pytest.main(args)
    if exit_code == 0:
        print("\n✅ All tests passed!")
    else:
        print(f"\n❌ Tests failed with exit code: {exit_code}")
    return exit_code


if __name__ == "__main__":
    sys.exit(run_tests(sys.argv[1:]))
