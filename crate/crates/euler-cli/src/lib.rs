//! Script front end for the quadric calculators in `euler-core`: a small
//! statement grammar ([`grammar`]) and a deterministic executor
//! ([`session`]) that turns session files into byte-stable transcripts.

pub mod grammar;
pub mod session;
