//! Exact computations of slice filtrations for Mackey functors over finite
//! groups: regular slice towers of suspended and desuspended Eilenberg–MacLane
//! spectra, slice-cell bookkeeping and geometric fixed point degree transport.

pub mod abelian;
pub mod cli;
pub mod group;
pub mod mackey;
pub mod slice;
