"""Reference KKT points generated by tools/kkt_oracle.py; do not edit by hand."""

ORACLE_REFERENCES = {
    'CIRCLE': ((1.0, 0.0, ), (-0.5, ), (0.0, -1.0, ), 1.0),
    'HS4': ((0.0, 0.0, ), (), (-4.0, -1.0, ), 2.6666666666666665),
    'HS6': ((0.9999999999999999, 0.9999999999999999, ), (-4.1822946919299846e-17, ), (0.0, 0.0, ), 1.232595164407831e-32),
    'HS8': ((4.601594917683295, 1.955843606618705, ), (-6.672121538913977e-20, 1.3554098799232656e-19, ), (0.0, 0.0, ), -1.0),
    'HS9': ((8.999999999999922, 11.999999999999893, ), (-0.032724923474893676, ), (0.0, 0.0, ), -0.4999999999999998),
    'HS14': ((0.8228756555322954, 0.9114378277661477, 0.0, ), (1.5944911182523067, -1.846591439606113, ), (0.0, 0.0, -1.846591439606113, ), 1.393464980689302),
    'HS21': ((0.0, 50.0, 10.000000000000002, 48.0, 50.0, ), (9.692073902487297e-16, -2.6015275372703507e-16, -8.102897054860449e-17, ), (-0.04000000000000943, 0.0, 0.0, 0.0, 0.0, ), -99.96),
    'HS28': ((10.499999999999998, 9.5, 10.5, ), (2.220446049250313e-16, ), (0.0, 0.0, 0.0, ), 3.1554436208840472e-30),
    'HS35': ((1.3333333333333321, 0.7777777777777783, 0.4444444444444448, 0.0, ), (0.22222222222222276, ), (0.0, 0.0, 0.0, -0.22222222222222276, ), 0.11111111111111072),
    'HS39': ((6.0, 6.0, 5.0, 5.0, ), (-1.0, -1.0, ), (0.0, 0.0, 0.0, 0.0, ), -1.0),
    'HS40': ((0.7937005259840998, 0.7071067811865476, 0.5297315471796478, 0.8408964152537146, ), (0.5, -0.47193715634084676, 0.3535533905932738, ), (0.0, 0.0, 0.0, 0.0, ), -0.25000000000000017),
    'HS42': ((2.0, 2.0, 0.848528137423858, 1.1313708498984758, ), (-2.0, 2.535533905932736, ), (0.0, 0.0, 0.0, 0.0, ), 13.857864376269049),
    'HS48': ((0.9999999999999987, 1.0000000000000009, 1.0000000000000009, 0.9999999999999998, 1.0000000000000002, ), (9.43689570931383e-16, -1.7763568394002505e-15, ), (0.0, 0.0, 0.0, 0.0, 0.0, ), 1.9721522630525295e-30),
    'HS50': ((1.0000000000000002, 1.0000000000000002, 1.0000000000000002, 0.9999999999999999, 1.0, ), (1.5777218104420236e-29, -4.733165431326071e-30, -9.195159926482419e-30, ), (0.0, 0.0, 0.0, 0.0, 0.0, ), 1.2458184882436856e-62),
    'HS51': ((1.0, 1.0, 1.0, 1.0, 1.0, ), (6.196593625814996e-17, 8.7785076365711e-17, -1.600786686668845e-16, ), (0.0, 0.0, 0.0, 0.0, 0.0, ), 0.0),
    'HS71': ((0.0, 3.7429996372644174, 2.821149984184874, 0.3794082931726722, 0.0, ), (-0.5522936601207269, 0.1614685667705058, ), (-1.0878712286669394, 0.0, 0.0, 0.0, -0.5522936601207269, ), 17.0140172891563),
    'HS79': ((1.1911274563110514, 1.3626031649617423, 1.4728179315120877, 1.635016619167993, 1.6790814361664077, ), (-0.038821048522653105, -0.016726517032489518, -0.0002873278136941015, ), (0.0, 0.0, 0.0, 0.0, 0.0, ), 0.07877682087105692),
}
