"""Named parameter sets for the reference tables and figures."""

RECIPES = {
    "table1": {
        "command": "solve",
        "sigma": 3.125, "k": 0.4, "xi": 0.091, "eps": 0.0,
        "nr": 65, "ntheta": 30, "normalize": "overtone2",
    },
    "table2": {
        "command": "solve",
        "sigma": 3.125, "k": 0.29, "xi": 0.091, "eps": 0.18,
        "nr": 65, "ntheta": 56, "normalize": "overtone1",
    },
    "table3": {
        "command": "solve",
        "sigma": 3.125, "k": 0.4, "xi": 0.091, "eps": 0.18,
        "nr": 65, "ntheta": 56, "normalize": "fundamental",
    },
    "fig5": {
        "command": "scan", "axis": "sigma",
        "sigma_range": "1:5:41", "k": 0.4, "xi": 0.091, "eps": 0.0, "nmodes": 9,
    },
    "fig6": {
        "command": "scan", "axis": "sigma_k",
        "sigma_range": "1:5:41", "k_range": "0.2:0.8:31", "xi": 0.091, "eps": 0.0, "nmax": 15,
    },
    "fig7": {
        "command": "modes",
        "sigma": 2.57, "k": 0.492, "xi": 0.091, "eps": 0.0, "count": 20,
        "nr": 65, "ntheta": 30,
    },
    "fig8": {
        "command": "scan", "axis": "eccentricity",
        "sigma": 3.125, "k": 0.29, "xi": 0.091, "eps_range": "0:0.4:21", "nmodes": 10,
    },
    "fig9": {
        "command": "modes",
        "sigma": 3.125, "k": 0.29, "xi": 0.091, "eps": 0.18, "count": 20,
        "nr": 65, "ntheta": 56,
    },
    "xiopt": {
        "command": "scan", "axis": "xi",
        "sigma": 2.57, "k": 0.492, "eps": 0.0, "xi_range": "0.02:0.2:37", "nmax": 15,
    },
}
