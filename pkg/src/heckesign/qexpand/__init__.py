"""q-expansions: power series, Dirichlet characters, eigenform tables."""

from .characters import DirichletCharacter, characters_mod, sqrt_characters, unit_group_generators
from .forms import (
    BUILTIN_SPECS,
    CoeffTable,
    EigenformSpec,
    EtaQuotient,
    Ingested,
    Level1Construction,
    OutOfRange,
    builtin_labels,
    builtin_table,
    delta_table,
    verify_eigenform,
    verify_reality,
)
from .ingest import ParseError, ValidationError, cyc_to_json, dump_form, form_to_json, ingest_form, load_form, parse_form, twist
from .series import (
    PowerSeriesQ,
    bernoulli,
    delta_series,
    dim_cusp_forms_level1,
    eisenstein,
    eta_expand,
    eta_quotient,
    miller_basis,
    series_power,
)

__all__ = [
    "DirichletCharacter",
    "characters_mod",
    "sqrt_characters",
    "unit_group_generators",
    "BUILTIN_SPECS",
    "CoeffTable",
    "EigenformSpec",
    "EtaQuotient",
    "Ingested",
    "Level1Construction",
    "OutOfRange",
    "builtin_labels",
    "builtin_table",
    "delta_table",
    "verify_eigenform",
    "verify_reality",
    "ParseError",
    "ValidationError",
    "cyc_to_json",
    "dump_form",
    "form_to_json",
    "ingest_form",
    "load_form",
    "parse_form",
    "twist",
    "PowerSeriesQ",
    "bernoulli",
    "delta_series",
    "dim_cusp_forms_level1",
    "eisenstein",
    "eta_expand",
    "eta_quotient",
    "miller_basis",
    "series_power",
]
