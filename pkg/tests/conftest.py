from hypothesis import HealthCheck, settings

# Exact symbolic checks are slow per example; bound them by example count only.
settings.register_profile(
    "oddcon",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("oddcon")
