pub mod analysis;
pub mod ascon;
pub mod cli;
pub mod codec;
pub mod error;
pub mod field;
pub mod kat;
pub mod kem;
pub mod ntt;
pub mod params;
pub mod pke;
pub mod sampling;

pub use codec::Message;
pub use error::{Error, Result};
pub use kem::{Kem, KemSecretKey, PublicKey, SharedKey};
pub use params::{ParamName, ParamSet, SizeReport};
pub use pke::Ciphertext;
