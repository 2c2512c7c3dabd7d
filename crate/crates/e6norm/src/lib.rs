//! Exact-arithmetic toolkit for torus normalizers in groups of Lie type E6.
//!
//! The crate builds, entirely over the integers and small finite fields:
//!
//! - the E6 root system with a fixed total ordering, its special and
//!   extraspecial pairs, and the Chevalley structure constants ([`rootsys`]);
//! - the Weyl group W of order 51840 as 6x6 integer matrices, its 25
//!   conjugacy classes and their centralizers, and verified finite
//!   presentations of subgroups ([`weyl`]);
//! - the extended Weyl group (Tits group) realized faithfully inside the
//!   78-dimensional adjoint representation ([`liealg`]);
//! - finite fields F_{q^k} with discrete logarithms at desk scale ([`ff`]);
//! - arithmetic of maximal tori of E6(q) and their algebraic normalizers
//!   in twisted normal form ([`torusnorm`]);
//! - a decision procedure for whether each of the 25 classes of maximal
//!   tori has a complement in its algebraic normalizer, with explicit
//!   witnesses, plus minimal-order lifts of Weyl elements ([`split`]);
//! - a batch verification harness with machine-readable reports
//!   ([`report`]).

pub mod ff;
pub mod liealg;
pub mod mat;
pub mod report;
pub mod rootsys;
pub mod snf;
pub mod split;
pub mod torusnorm;
pub mod weyl;

use std::sync::OnceLock;

/// Shared immutable context: root system, structure constants, Weyl group,
/// and the Tits-group generator tables. Built once per process.
pub struct E6 {
    pub roots: rootsys::RootSystem,
    pub consts: rootsys::StructureConstantTable,
    pub weyl: weyl::WeylGroup,
    pub tits: liealg::TitsCtx,
}

impl E6 {
    pub fn get() -> &'static E6 {
        static CTX: OnceLock<E6> = OnceLock::new();
        CTX.get_or_init(|| {
            let roots = rootsys::RootSystem::build_e6();
            let consts = rootsys::StructureConstantTable::compute(&roots);
            let weyl = weyl::WeylGroup::enumerate(&roots);
            let tits = liealg::TitsCtx::build(&roots, &consts, &weyl);
            E6 {
                roots,
                consts,
                weyl,
                tits,
            }
        })
    }
}
