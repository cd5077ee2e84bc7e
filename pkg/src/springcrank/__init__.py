"""springcrank: spring-assisted four-bar mechanisms for motion conversion.

Turn a reciprocating input (slider or rocker) into continuous crank rotation
by placing and sizing a single linear spring on an extended coupler so that
its stored elastic energy carries the crank through the two transmission
singularities of the cycle.

Layers:

* :mod:`springcrank.geometry`  - closed-form four-bar kinematics
* :mod:`springcrank.placement` - spring placement and sizing on coupler curves
* :mod:`springcrank.torque`    - torque assembly and the design pipeline
* :mod:`springcrank.sweeps`    - design-space grids and solution spaces
* :mod:`springcrank.prototype` - spring-actuated bench prediction
* :mod:`springcrank.cli`       - the ``springcrank`` command
"""
from .errors import (AssemblyError, ConfigError, DataError, DegenerateCurveError,
                     GeometryError, MechanismError, NumericalError, PlacementError,
                     RootError, SizingError, TotalInfeasibleError)
from .geometry import (Branch, CouplerAttachment, CouplerCurve, Direction,
                       FourBarGeometry, GrashofResult, MechanismState,
                       coupler_curve, coupler_point, coupler_point_velocity,
                       grashof_check, mechanism_state, rocker_state,
                       rocker_velocity_ratio, singular_angles, slider_position,
                       slider_velocity_ratio, velocity_ratio)
from .placement import (FeasibilityReport, SizingInput, SpringDesign,
                        SpringLengthProfile, TransitionPoints,
                        feasibility_conditions, grounding_point, relaxed_length,
                        size_spring, spring_length_profile, transition_points)
from .torque import (ConstantLoad, EnergyInterval, InputLoad, PipelineResult,
                     SpringActuatedLoad, TorqueProfile, UnfavorableRegions,
                     design_pipeline, kinematic_torque, spring_torque,
                     total_torque_profile, unfavorable_regions)
from .sweeps import (AttachmentSearch, FamilyEntry, SolutionSpace, SweepGrid,
                     rocker_solution_space, sweep_attachment, sweep_family)
from .prototype import (MeasuredComparison, MeasuredSeries, compare_measured,
                        load_measured_series, prototype_torque_profile)
from .config import RunConfig, load_bundled_config, load_config, parse_config

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
