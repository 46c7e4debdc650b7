//! Constructions of C4-free graphs with large diameter relative to their
//! order and edge-connectivity, and exact verification of their properties.
//!
//! The crate is organized bottom-up:
//!
//! * [`gf`] and [`projective`]: finite fields and the projective plane
//!   PG(2, q).
//! * [`graph`]: BFS layers, diameter, 4-cycle detection, edge and vertex
//!   connectivity, graph6 / DOT / role-sidecar codecs.
//! * [`brown`]: the polarity graph B(q) and its property checks.
//! * [`constructions`]: the modified graph H, bridged and identified chains,
//!   and the layered families built from frozen gadgets.
//! * [`audit`]: diameter bounds and BFS-layer claims evaluated in exact
//!   rational arithmetic.
//! * [`enumerate`]: isomorph-free generation of small connected C4-free
//!   graphs.

pub mod audit;
pub mod brown;
pub mod constructions;
pub mod enumerate;
pub mod gf;
pub mod graph;
pub mod projective;
