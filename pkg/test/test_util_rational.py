from fractions import Fraction
import logging
import unittest

from llycurv.util import Util, logger, set_verbose


class UtilRationalTests(unittest.TestCase):
    def test_format_rational(self) -> None:
        self.assertEqual("1/12", Util.format_rational(Fraction(1, 12)))
        self.assertEqual("-3/2", Util.format_rational(Fraction(-3, 2)))
        self.assertEqual("2", Util.format_rational(Fraction(4, 2)))
        self.assertEqual("0", Util.format_rational(0))

    def test_parse_rational_inverts_format(self) -> None:
        for value in (Fraction(1, 12), Fraction(-7, 3), Fraction(5)):
            self.assertEqual(value, Util.parse_rational(Util.format_rational(value)))

    def test_approximate_uses_configured_digits(self) -> None:
        self.assertEqual("0.0833333333333", Util().approximate(Fraction(1, 12)))
        self.assertEqual("0.667", Util(approx_digits=3).approximate(Fraction(2, 3)))
        self.assertEqual("2", Util().approximate(Fraction(2)))

    def test_rational_to_dict(self) -> None:
        self.assertEqual(
            {"num": 3, "den": 4, "approx": "0.75"},
            Util().rational_to_dict(Fraction(3, 4)),
        )

    def test_default_schema_is_bundled(self) -> None:
        util = Util()

        self.assertEqual("CurvatureReport.xsd", util.schema_path.name)
        self.assertTrue(util.schema_path.exists())


class VerboseLoggingTests(unittest.TestCase):
    def tearDown(self) -> None:
        logger.setLevel(logging.NOTSET)

    def test_set_verbose_levels(self) -> None:
        set_verbose(True)
        self.assertEqual(logging.DEBUG, logger.level)

        set_verbose(False)
        self.assertEqual(logging.WARNING, logger.level)

    def test_single_stream_handler(self) -> None:
        set_verbose(True)
        set_verbose(True)

        streams = [h for h in logger.handlers if isinstance(h, logging.StreamHandler)]
        self.assertEqual(1, len(streams))


if __name__ == "__main__":
    unittest.main()
