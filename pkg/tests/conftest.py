import hypothesis

hypothesis.settings.register_profile(
    "fraccurv", deadline=None, max_examples=50
)
hypothesis.settings.load_profile("fraccurv")
