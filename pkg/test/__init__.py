# Makes llycurv importable from src when pytest is run without an install.
import sitecustomize  # noqa: F401
