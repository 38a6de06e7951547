//! Sensor-attack models for supervisory control of discrete-event systems.
//!
//! Given a plant `G` (damage states marked), a supervisor `S` and a sensor
//! attacker `A`, this crate builds the attacked closed loop
//! `G || CE || BT(S)^A || A`, reduces `A` to a smaller attack-equivalent
//! attacker by control congruence, and checks attack equivalence, attacker
//! validity and covertness exactly.
//!
//! ```
//! use desred::{io, transform, reduce, verify};
//!
//! let alphabet = io::parse_alphabet(
//!     "events: a\ncontrollable:\nobservable: a\nattacker-observable: a\ncompromised: a\n",
//! ).unwrap();
//! let g = io::parse_model("automaton G\nstates: g\ninitial: g\nmarked: g\ntransitions:\ng a g\n").unwrap();
//! let s = io::parse_model("automaton S\nstates: s\ninitial: s\ntransitions:\ns a s\n").unwrap();
//! let a = io::parse_model(
//!     "automaton A\nstates: w r w2\ninitial: w\nmarked: *\ntransitions:\nw a r\nr a# w2\nw2 a r\n",
//! ).unwrap();
//! let ctx = transform::build_context(&g, &s, &alphabet).unwrap();
//! let red = reduce::reduce_ra(&a, &ctx).unwrap();
//! assert_eq!(red.reduced.num_states(), 2);
//! assert!(verify::attack_equivalent(&a, &red.reduced, &ctx).unwrap().is_equivalent());
//! ```

pub mod automaton;
pub mod equiv;
pub mod error;
pub mod io;
pub mod label;
pub mod par;
pub mod pipeline;
pub mod product;
pub mod random;
pub mod reduce;
pub mod transform;
pub mod verify;

pub use automaton::{Automaton, StateId};
pub use error::{Error, Result};
pub use label::{AlphabetSpec, EventLabel};
