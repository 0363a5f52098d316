"""Published reference values for the Bitstamp BTC/USD study (90-day windows, 2017-2024).

Row layouts:

* ``COMPLETENESS_TABLE``: (year, freq_min, valid_bars, expected_bars, completeness_pct)
* ``PARTITION_TABLE``: (freq_min, year, n_points, k_opt, n_opt, used_len)
* ``LOGW_TABLE``: (freq_min, year, standard_min, standard_max, wide_min, wide_max)
* ``ADF_TABLE``: (freq_min, year, n_obs, adf_stat, stationary)
* ``ROLLING_TABLE``: (freq_min, year, n_obs, rolling_window)
* ``GAP_TABLE``: (freq_min, year, total_missing_minutes, long_gap_count)
* ``MFDFA_RV_TABLE``: (freq_min, year, min, max, mean, width, shuffled min, max, mean, width)

The partition rows double as an exact oracle for the K = n = floor(sqrt(N)) rule.
"""

COMPLETENESS_TABLE = (
    (2017, 1, 128014, 129600, 98.78),
    (2017, 5, 24665, 25920, 95.16),
    (2017, 10, 11883, 12960, 91.69),
    (2017, 15, 7697, 8640, 89.09),
    (2018, 1, 129180, 129600, 99.68),
    (2018, 5, 25543, 25920, 98.55),
    (2018, 10, 12610, 12960, 97.3),
    (2018, 15, 8319, 8640, 96.28),
    (2019, 1, 128999, 129600, 99.54),
    (2019, 5, 25422, 25920, 98.08),
    (2019, 10, 12501, 12960, 96.46),
    (2019, 15, 8205, 8640, 94.97),
    (2020, 1, 128998, 129600, 99.54),
    (2020, 5, 25379, 25920, 97.91),
    (2020, 10, 12461, 12960, 96.15),
    (2020, 15, 8179, 8640, 94.66),
    (2021, 1, 129464, 129600, 99.9),
    (2021, 5, 25795, 25920, 99.52),
    (2021, 10, 12837, 12960, 99.05),
    (2021, 15, 8520, 8640, 98.61),
    (2022, 1, 127584, 129600, 98.44),
    (2022, 5, 24267, 25920, 93.62),
    (2022, 10, 11486, 12960, 88.63),
    (2022, 15, 7280, 8640, 84.26),
    (2023, 1, 126682, 129600, 97.75),
    (2023, 5, 23462, 25920, 90.52),
    (2023, 10, 10784, 12960, 83.21),
    (2023, 15, 6677, 8640, 77.28),
    (2024, 1, 128503, 129600, 99.15),
    (2024, 5, 25052, 25920, 96.65),
    (2024, 10, 12184, 12960, 94.01),
    (2024, 15, 7927, 8640, 91.75),
)
PARTITION_TABLE = (
    (1, 2017, 128013, 357, 357, 127449),
    (1, 2018, 129179, 359, 359, 128881),
    (1, 2019, 128998, 359, 359, 128881),
    (1, 2020, 128997, 359, 359, 128881),
    (1, 2021, 129463, 359, 359, 128881),
    (1, 2022, 127583, 357, 357, 127449),
    (1, 2023, 126681, 355, 355, 126025),
    (1, 2024, 128502, 358, 358, 128164),
    (5, 2017, 24664, 157, 157, 24649),
    (5, 2018, 25542, 159, 159, 25281),
    (5, 2019, 25421, 159, 159, 25281),
    (5, 2020, 25378, 159, 159, 25281),
    (5, 2021, 25794, 160, 160, 25600),
    (5, 2022, 24266, 155, 155, 24025),
    (5, 2023, 23461, 153, 153, 23409),
    (5, 2024, 25051, 158, 158, 24964),
    (10, 2017, 11882, 109, 109, 11881),
    (10, 2018, 12609, 112, 112, 12544),
    (10, 2019, 12500, 111, 111, 12321),
    (10, 2020, 12460, 111, 111, 12321),
    (10, 2021, 12836, 113, 113, 12769),
    (10, 2024, 12183, 110, 110, 12100),
    (15, 2018, 8318, 91, 91, 8281),
    (15, 2019, 8204, 90, 90, 8100),
    (15, 2020, 8178, 90, 90, 8100),
    (15, 2021, 8519, 92, 92, 8464),
    (15, 2024, 7926, 89, 89, 7921),
)
LOGW_TABLE = (
    (1, 2017, -1.797, -0.09, -1.797, -0.009),
    (1, 2018, -3.454, -0.11, -3.454, -0.011),
    (1, 2019, -3.149, -0.114, -3.149, -0.011),
    (1, 2020, -1.857, -0.124, -1.857, -0.012),
    (1, 2021, -2.377, -0.098, -2.377, -0.01),
    (1, 2022, -5.021, -0.154, -5.021, -0.015),
    (1, 2023, -6.177, -0.199, -6.177, -0.02),
    (1, 2024, -5.249, -0.175, -5.249, -0.018),
    (5, 2017, -1.636, -0.091, -1.636, -0.009),
    (5, 2018, -3.778, -0.119, -3.778, -0.012),
    (5, 2019, -3.206, -0.12, -3.206, -0.012),
    (5, 2020, -1.911, -0.142, -1.911, -0.014),
    (5, 2021, -2.438, -0.1, -2.438, -0.01),
    (5, 2022, -5.23, -0.154, -5.23, -0.015),
    (5, 2023, -6.375, -0.19, -6.375, -0.019),
    (5, 2024, -5.502, -0.172, -5.502, -0.017),
    (10, 2017, -1.612, -0.09, -1.613, -0.009),
    (10, 2018, -3.866, -0.121, -3.866, -0.012),
    (10, 2019, -3.382, -0.122, -3.382, -0.012),
    (10, 2020, -2.012, -0.147, -2.012, -0.015),
    (10, 2021, -2.577, -0.1, -2.577, -0.01),
    (10, 2024, -5.56, -0.17, -5.56, -0.017),
    (15, 2018, -3.867, -0.123, -3.867, -0.012),
    (15, 2019, -3.358, -0.123, -3.358, -0.012),
    (15, 2020, -2.091, -0.149, -2.091, -0.015),
    (15, 2021, -2.545, -0.1, -2.545, -0.01),
    (15, 2024, -5.544, -0.17, -5.544, -0.017),
)
ADF_TABLE = (
    (1, 2017, 128013, -17.268377, True),
    (1, 2018, 129179, -21.103397, True),
    (1, 2019, 128998, -22.996778, True),
    (1, 2020, 128997, -16.217826, True),
    (1, 2021, 129463, -19.473206, True),
    (1, 2022, 127583, -20.992987, True),
    (1, 2023, 126681, -20.199538, True),
    (1, 2024, 128502, -19.50251, True),
    (5, 2017, 24664, -10.745265, True),
    (5, 2018, 25542, -12.375319, True),
    (5, 2019, 25421, -12.273721, True),
    (5, 2020, 25378, -10.130513, True),
    (5, 2021, 25794, -10.793006, True),
    (5, 2022, 24266, -13.884217, True),
    (5, 2023, 23461, -17.513342, True),
    (5, 2024, 25051, -11.92334, True),
    (10, 2017, 11882, -7.661084, True),
    (10, 2018, 12609, -8.93299, True),
    (10, 2019, 12500, -9.974204, True),
    (10, 2020, 12460, -7.922876, True),
    (10, 2021, 12836, -8.282212, True),
    (10, 2024, 12183, -12.177698, True),
    (15, 2018, 8318, -7.222499, True),
    (15, 2019, 8204, -8.225838, True),
    (15, 2020, 8178, -7.227016, True),
    (15, 2021, 8519, -7.315916, True),
    (15, 2024, 7926, -8.943357, True),
)
ROLLING_TABLE = (
    (1, 2017, 128013, 6400),
    (1, 2018, 129179, 6458),
    (1, 2019, 128998, 6449),
    (1, 2020, 128997, 6449),
    (1, 2021, 129463, 6473),
    (1, 2022, 127583, 6379),
    (1, 2023, 126681, 6334),
    (1, 2024, 128502, 6425),
    (5, 2017, 24664, 1233),
    (5, 2018, 25542, 1277),
    (5, 2019, 25421, 1271),
    (5, 2020, 25378, 1268),
    (5, 2021, 25794, 1289),
    (5, 2022, 24266, 1213),
    (5, 2023, 23461, 1173),
    (5, 2024, 25051, 1252),
    (10, 2017, 11882, 594),
    (10, 2018, 12609, 630),
    (10, 2019, 12500, 625),
    (10, 2020, 12460, 623),
    (10, 2021, 12836, 641),
    (10, 2024, 12183, 609),
    (15, 2018, 8318, 415),
    (15, 2019, 8204, 410),
    (15, 2020, 8178, 408),
    (15, 2021, 8519, 425),
    (15, 2024, 7926, 396),
)
GAP_TABLE = (
    (1, 2017, 1586, 0),
    (1, 2018, 420, 0),
    (1, 2019, 601, 1),
    (1, 2020, 602, 0),
    (1, 2021, 136, 0),
    (1, 2022, 2016, 1),
    (1, 2023, 2918, 1),
    (1, 2024, 1097, 2),
    (5, 2017, 6275, 0),
    (5, 2018, 1885, 0),
    (5, 2019, 2490, 1),
    (5, 2020, 2705, 0),
    (5, 2021, 625, 0),
    (5, 2022, 8265, 3),
    (5, 2023, 12285, 3),
    (5, 2024, 4340, 2),
    (10, 2017, 10770, 10),
    (10, 2018, 3500, 0),
    (10, 2019, 4590, 1),
    (10, 2020, 4990, 3),
    (10, 2021, 1230, 0),
    (10, 2024, 7760, 4),
    (15, 2018, 4815, 0),
    (15, 2019, 6525, 3),
    (15, 2020, 6915, 6),
    (15, 2021, 1800, 0),
    (15, 2024, 10695, 13),
)
MFDFA_RV_TABLE = (
    (1, 2017, 0.863, 2.082, 1.351, 1.219, 0.46, 0.55, 0.504, 0.09),
    (1, 2018, 0.812, 0.867, 0.848, 0.055, 0.487, 0.572, 0.531, 0.085),
    (1, 2019, 0.748, 0.912, 0.876, 0.163, 0.395, 0.558, 0.51, 0.163),
    (1, 2020, 0.871, 0.945, 0.896, 0.074, 0.422, 0.618, 0.534, 0.195),
    (1, 2021, 0.829, 0.92, 0.894, 0.091, 0.457, 0.559, 0.517, 0.102),
    (1, 2022, 0.781, 0.939, 0.872, 0.158, 0.453, 0.579, 0.526, 0.126),
    (1, 2023, 0.78, 0.931, 0.867, 0.151, 0.438, 0.581, 0.518, 0.143),
    (1, 2024, 0.814, 1.023, 0.921, 0.209, 0.462, 0.572, 0.527, 0.11),
    (5, 2017, 0.85, 0.918, 0.901, 0.068, 0.47, 0.591, 0.533, 0.121),
    (5, 2018, 0.779, 0.904, 0.854, 0.125, 0.46, 0.594, 0.53, 0.134),
    (5, 2019, 0.642, 0.948, 0.837, 0.306, 0.411, 0.612, 0.527, 0.2),
    (5, 2020, 0.814, 0.942, 0.885, 0.128, 0.425, 0.676, 0.549, 0.251),
    (5, 2021, 0.82, 0.907, 0.886, 0.087, 0.439, 0.578, 0.517, 0.139),
    (5, 2022, 0.726, 0.918, 0.822, 0.192, 0.41, 0.582, 0.526, 0.172),
    (5, 2023, 0.73, 1.04, 0.871, 0.31, 0.428, 0.595, 0.523, 0.167),
    (5, 2024, 0.791, 0.969, 0.876, 0.178, 0.393, 0.563, 0.508, 0.17),
    (10, 2017, 0.84, 0.946, 0.914, 0.106, 0.494, 0.574, 0.535, 0.08),
    (10, 2018, 0.726, 0.889, 0.834, 0.163, 0.457, 0.593, 0.527, 0.135),
    (10, 2019, 0.592, 0.917, 0.835, 0.324, 0.321, 0.627, 0.526, 0.306),
    (10, 2020, 0.824, 0.863, 0.87, 0.04, 0.352, 0.717, 0.536, 0.365),
    (10, 2021, 0.777, 0.882, 0.862, 0.104, 0.44, 0.586, 0.526, 0.146),
    (10, 2024, 0.767, 0.951, 0.88, 0.184, 0.419, 0.607, 0.516, 0.188),
    (15, 2018, 0.755, 0.912, 0.837, 0.157, 0.475, 0.632, 0.528, 0.157),
    (15, 2019, 0.646, 0.948, 0.834, 0.302, 0.383, 0.667, 0.523, 0.284),
    (15, 2020, 0.758, 0.84, 0.82, 0.082, 0.322, 0.744, 0.527, 0.422),
    (15, 2021, 0.755, 0.874, 0.842, 0.119, 0.419, 0.612, 0.527, 0.193),
    (15, 2024, 0.747, 0.942, 0.87, 0.195, 0.478, 0.654, 0.527, 0.176),
)

RETAINED_YEARS = {
    1: (2017, 2018, 2019, 2020, 2021, 2022, 2023, 2024),
    5: (2017, 2018, 2019, 2020, 2021, 2022, 2023, 2024),
    10: (2017, 2018, 2019, 2020, 2021, 2024),
    15: (2018, 2019, 2020, 2021, 2024),
}
EXCLUDED_YEARS = {1: (), 5: (), 10: (2022, 2023), 15: (2017, 2022, 2023)}
