"""Registry of the built-in model presets.

Quartic-oscillator models expand in a dilated harmonic basis (the length
scale accelerates convergence of the quartic modes without changing the
spanned space in the complete-basis limit); box models use sine modes on
[-1, 1]; the isotropic oscillator uses its own eigenbasis (scale 1).
"""

from __future__ import annotations

from .groups import builtin_table
from .operators import ModelSpec
from .poly import parse_polynomial

QUARTIC_SCALE = 0.6


def _model(name, dim, kind, h0, hprime, group, subgroup, scale=1.0,
           description="", dynamical=()):
    return ModelSpec(
        name=name,
        dim=dim,
        kind=kind,
        h0=parse_polynomial(h0, dim),
        hprime=parse_polynomial(hprime, dim),
        group=builtin_table(group),
        subgroup=builtin_table(subgroup),
        scale=scale,
        description=description,
        dynamical_ops=tuple(parse_polynomial(d, dim) for d in dynamical),
    )


_FACTORIES = {
    "quartic2d_xy": lambda: _model(
        "quartic2d_xy", 2, "harmonic",
        "px2 + py2 + x^4 + y^4", "x*y", "C4v", "C2v_modified",
        scale=QUARTIC_SCALE,
        description="2-D quartic oscillator with i*g*xy; E levels go complex at g=0+",
        dynamical=("px2 + x^4 - py2 - y^4",)),
    "quartic2d_xy3": lambda: _model(
        "quartic2d_xy3", 2, "harmonic",
        "px2 + py2 + x^4 + y^4", "x*y^3", "C4v", "C2",
        scale=QUARTIC_SCALE,
        description="2-D quartic oscillator with i*g*xy^3; complex pairs can turn real",
        dynamical=("px2 + x^4 - py2 - y^4",)),
    "quartic2d_xy2": lambda: _model(
        "quartic2d_xy2", 2, "harmonic",
        "px2 + py2 + x^4 + y^4", "x*y^2", "C4v", "Cs",
        scale=QUARTIC_SCALE,
        description="2-D quartic oscillator with i*g*xy^2; PT symmetric, real until g_c",
        dynamical=("px2 + x^4 - py2 - y^4",)),
    "quartic2d_aniso_xy": lambda: _model(
        "quartic2d_aniso_xy", 2, "harmonic",
        "px2 + py2 + x^4 + 2*y^4", "x*y", "C2v", "C2",
        scale=QUARTIC_SCALE,
        description="anisotropic 2-D quartic (alpha_x != alpha_y) with i*g*xy; "
                    "one-dimensional irreps only, real spectrum until g_c"),
    "box2d_xy": lambda: _model(
        "box2d_xy", 2, "box",
        "px2 + py2", "x*y", "C4v", "C2v_modified",
        description="particle in a square box with i*g*xy"),
    "box2d_xy2": lambda: _model(
        "box2d_xy2", 2, "box",
        "px2 + py2", "x*y^2", "C4v", "Cs",
        description="particle in a square box with i*g*xy^2; PT symmetric"),
    "box2d_xy3": lambda: _model(
        "box2d_xy3", 2, "box",
        "px2 + py2", "x*y^3", "C4v", "C2",
        description="particle in a square box with i*g*xy^3"),
    "ho2d_xy": lambda: _model(
        "ho2d_xy", 2, "harmonic",
        "px2 + py2 + x^2 + y^2", "x*y", "C4v", "C2v_modified",
        description="isotropic oscillator with i*g*xy; exactly solvable by a "
                    "45-degree normal-mode rotation"),
    "ho2d_xy2": lambda: _model(
        "ho2d_xy2", 2, "harmonic",
        "px2 + py2 + x^2 + y^2", "x*y^2", "C4v", "Cs",
        description="Barbanis-type oscillator: isotropic HO with i*g*xy^2"),
    "quartic3d_zxy": lambda: _model(
        "quartic3d_zxy", 3, "harmonic",
        "px2 + py2 + pz2 + x^4 + y^4 + z^4", "z*x + z*y", "Oh", "C2h",
        scale=QUARTIC_SCALE,
        description="isotropic 3-D quartic oscillator with i*g*z(x+y)",
        dynamical=("2*px2 + 2*x^4 - py2 - y^4 - pz2 - z^4",
                   "2*py2 + 2*y^4 - px2 - x^4 - pz2 - z^4")),
    "quartic3d_aniso": lambda: _model(
        "quartic3d_aniso", 3, "harmonic",
        "px2 + py2 + pz2 + x^4 + 2*y^4 + 4*z^4", "z*x + z*y", "C2h_z", "Ci",
        scale=QUARTIC_SCALE,
        description="anisotropic 3-D quartic with i*g*z(x+y); inversion-only "
                    "diagonalization subgroup, nondegenerate H0"),
    "box3d_zxy": lambda: _model(
        "box3d_zxy", 3, "box",
        "px2 + py2 + pz2", "z*x + z*y", "Oh", "C2h",
        description="particle in a cubic box with i*g*z(x+y); first-order "
                    "corrections in closed form"),
}


def preset_names():
    return sorted(_FACTORIES)


def get_preset(name) -> ModelSpec:
    if name not in _FACTORIES:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return _FACTORIES[name]()


def preset_rows():
    """(name, dim, kind, group, subgroup, hprime, description) per preset."""
    rows = []
    for name in preset_names():
        m = get_preset(name)
        rows.append((m.name, m.dim, m.kind, m.group.name, m.subgroup.name,
                     str(m.hprime), m.description))
    return rows
