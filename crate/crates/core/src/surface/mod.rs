//! Surface descriptions: curve configurations on the minimal resolution,
//! their validation and the catalog file format.

mod ade;
mod catalog;
mod model;
mod validate;

pub use ade::{
    classify_dynkin, format_singularity_type, parse_singularity_type, AdeError, AdeType,
};
pub use catalog::{
    builtin_fixtures, extension_fixtures, load_catalog, parse_catalog, parse_catalog_unvalidated,
    save_catalog, CatalogError,
};
pub use model::{BvStatus, Configuration, Curve, CurveId, Metadata, SingularPoint, SurfaceModel};
pub use validate::{validate, ValidationReport, Violation};
