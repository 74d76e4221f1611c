"""Benchmark harness: generators, solver sweeps, verification and reports."""
