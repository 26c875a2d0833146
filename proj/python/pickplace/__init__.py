"""Planar pick-and-place task-and-motion planning.

The compiled core exposes scene I/O (native JSON and grid levels), the
subgoal-search solver with its seven ablation variants, bottleneck density
analysis, independent solution replay checking, benchmark records, and SVG
rendering. Everything is deterministic per seed: the same (scene, variant,
seed) always reproduces the same solution bytes.
"""

from ._core import (
    Configuration,
    DensityGrid,
    LoadedScene,
    Rect,
    RunRecord,
    Scene,
    SceneObject,
    SolveOutcome,
    Vec2,
    aggregates_to_csv,
    bench,
    build_density,
    check_solution,
    from_sokoban,
    goal_satisfied,
    is_occluded,
    load_scene,
    parse_scene,
    records_from_csv,
    records_to_csv,
    render_svg,
    score,
    serialize_scene,
    solve,
    variants,
)

__all__ = [
    "Configuration",
    "DensityGrid",
    "LoadedScene",
    "Rect",
    "RunRecord",
    "Scene",
    "SceneObject",
    "SolveOutcome",
    "Vec2",
    "aggregates_to_csv",
    "bench",
    "build_density",
    "check_solution",
    "from_sokoban",
    "goal_satisfied",
    "is_occluded",
    "load_scene",
    "parse_scene",
    "records_from_csv",
    "records_to_csv",
    "render_svg",
    "score",
    "serialize_scene",
    "solve",
    "variants",
]
