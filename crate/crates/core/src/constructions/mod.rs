//! Ways to build groups: presentations and coset enumeration, named
//! families, the worked example and the default catalog.

pub mod catalog;
pub mod example;
pub mod named;
pub mod presentation;
pub mod todd_coxeter;

pub use named::{
    agl1, alternating, cyclic, dihedral, direct_product, gl_natural_group, named_group,
    primitive_root, psl2, symmetric, Family,
};
pub use presentation::{free_reduce, inverse_word, Presentation, Word};
pub use todd_coxeter::{
    coset_permutation_group, evaluate_word, todd_coxeter, CosetTable, DEFAULT_COSET_CAP,
};
pub use example::{example_2_2, Example, EXAMPLE_PRESENTATION};
pub use catalog::{
    build_catalog, catalog_manifest, default_catalog, manifest_json, maximal_coset_entries, Catalog, CatalogEntry,
    CatalogItem,
};
