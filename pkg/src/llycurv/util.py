import decimal
import logging
from fractions import Fraction
from pathlib import Path

logger = logging.getLogger("llycurv")
logger.addHandler(logging.NullHandler())


def set_verbose(verbose: bool = True) -> None:
    """
    Route ``llycurv`` log records to standard error.

    Args:
        verbose: ``True`` logs at DEBUG level, ``False`` at WARNING.
    """
    level = logging.DEBUG if verbose else logging.WARNING
    if not any(isinstance(handler, logging.StreamHandler) for handler in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(level)


class Util:
    """
    Shared settings for the curvature engine and helpers for rendering exact
    rationals in reports.
    """

    def __init__(
        self,
        processes: int = 1,
        approx_digits: int = 12,
        lipschitz_support_limit: int = 16,
        hall_support_limit: int = 20,
        certify_transport: bool = False,
        schema_path: str | Path | None = None,
    ) -> None:
        """
        Configure defaults used across the library.

        Args:
            processes: Worker processes used when every edge of a graph is
                evaluated; ``1`` keeps the computation in-process.
            approx_digits: Significant digits of the display-only decimal
                string that accompanies every rational in JSON and XML.
            lipschitz_support_limit: Largest ``|N[x] ∪ N[y]|`` the Lipschitz
                enumeration oracle accepts.
            hall_support_limit: Largest number of left base vertices the
                Hall subset search accepts.
            certify_transport: Re-check every optimal coupling for negative
                residual cycles before returning it.
            schema_path: Optional override for the report XSD.
        """
        self.processes = processes
        self.approx_digits = approx_digits
        self.lipschitz_support_limit = lipschitz_support_limit
        self.hall_support_limit = hall_support_limit
        self.certify_transport = certify_transport
        self.schema_path = (
            Path(schema_path)
            if schema_path is not None
            else Path(__file__).resolve().parent / "xsd" / "CurvatureReport.xsd"
        )

    def snapshot(self) -> dict:
        """Current settings as keyword arguments of ``Util``; picklable for worker processes."""
        return {
            "processes": self.processes,
            "approx_digits": self.approx_digits,
            "lipschitz_support_limit": self.lipschitz_support_limit,
            "hall_support_limit": self.hall_support_limit,
            "certify_transport": self.certify_transport,
            "schema_path": self.schema_path,
        }

    def restore(self, settings: dict) -> None:
        """Apply a ``snapshot`` taken in another process."""
        for name, value in settings.items():
            setattr(self, name, value)

    @staticmethod
    def format_rational(value: Fraction) -> str:
        """Render ``value`` as ``p/q``, or ``p`` when it is an integer."""
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    @staticmethod
    def parse_rational(text: str) -> Fraction:
        """Inverse of ``format_rational``."""
        return Fraction(text.strip())

    def approximate(self, value: Fraction) -> str:
        """
        Decimal approximation of ``value`` for display.

        The string never feeds back into any computation.
        """
        value = Fraction(value)
        with decimal.localcontext() as context:
            context.prec = self.approx_digits
            approx = decimal.Decimal(value.numerator) / decimal.Decimal(value.denominator)
        return format(approx, "f") if approx == approx.to_integral_value() else str(approx)

    def rational_to_dict(self, value: Fraction) -> dict:
        """JSON form of a rational: ``{"num", "den", "approx"}``."""
        value = Fraction(value)
        return {"num": value.numerator, "den": value.denominator, "approx": self.approximate(value)}


# Shared settings; can be overridden on module level if needed.
UTIL = Util()
