//! Knowledge compilation parameterized by width.
//!
//! Circuits of bounded treewidth compile to complete structured d-DNNFs, and
//! circuits of bounded pathwidth to complete unambiguous OBDDs. The
//! [`lowerbounds`] module goes the other way: it extracts rectangle covers from
//! complete representations and embeds set-covering CNFs into bounded-degree
//! formulas, so both sides can be measured on the same instances.
//!
//! Module map:
//! - [`logic`]: circuits, valuations, monotone clause forms, hypergraphs, oracles.
//! - [`decomp`]: tree/path decompositions, friendliness, split-width measures.
//! - [`targets`]: v-trees, NNF circuits, decision diagrams, checks and reasoning.
//! - [`compiler`]: the bag-assignment construction and its path specialization.
//! - [`lowerbounds`]: rectangles, fooling sets, embeddings, width certification.
//! - [`cli`]: the command-line driver behind the `widthkc` binary.
//!
//! ```
//! use widthkc::compiler::{compile_auto, verify_nnf, CompileOptions, Mode, Target};
//! use widthkc::lowerbounds::gen_scov;
//! use widthkc::targets::count_models;
//!
//! let f = gen_scov(4)?;
//! let p = compile_auto(&f.to_circuit(), Mode::Tree, None, &CompileOptions::default())?;
//! let Target::Sdnnf(d) = &p.target else { unreachable!() };
//! assert!(verify_nnf(&f, d)?.passed());
//! assert_eq!(count_models(d.value().unwrap())?, 81u32.into());
//! assert!(p.target_width() as u128 <= p.stats.ceiling());
//! # Ok::<(), widthkc::Error>(())
//! ```

pub mod cli;
pub mod compiler;
pub mod decomp;
pub mod error;
pub mod logic;
pub mod lowerbounds;
pub mod targets;

pub use error::{Error, Result, BRUTE_FORCE_CAP};
