from hypothesis import HealthCheck, settings

# Deep proofs route through a worker thread with a large stack, which
# makes per-example wall time too noisy for hypothesis deadlines.
settings.register_profile(
    "kernel",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("kernel")
