//! Fixtures shared by the benchmarks.

use structree::{generate, Family, FamilyBundle, FamilySpec, Structure};

pub fn bundle(family: Family, radius: u32) -> FamilyBundle {
    generate(FamilySpec::new(family, radius)).expect("family generates")
}

/// A truncation together with the structure of its canonical cuts.
pub fn structure(family: Family, radius: u32) -> (FamilyBundle, Structure) {
    let b = bundle(family, radius);
    let s = Structure::build(&b.graph, &b.canonical_cuts).expect("canonical cuts form a tree set");
    (b, s)
}
