//! FNV-1a digests of checker inputs, for replayable report provenance.

use alloc::format;
use alloc::string::String;

use crate::matrix::ComplexMatrix;

const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const PRIME: u64 = 0x0000_0100_0000_01b3;

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(OFFSET)
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(PRIME);
        }
    }

    fn write_u64(&mut self, v: u64) {
        self.write(&v.to_le_bytes());
    }

    fn write_f64(&mut self, v: f64) {
        self.write(&v.to_bits().to_le_bytes());
    }
}

/// Hashes the conjecture tag plus each role-tagged matrix, entry by entry.
pub(crate) fn instance_digest(tag: &str, parts: &[(&str, &ComplexMatrix)]) -> String {
    let mut h = Fnv::new();
    h.write(tag.as_bytes());
    for (role, m) in parts {
        h.write(role.as_bytes());
        h.write_u64(m.dim() as u64);
        for z in m.entries() {
            h.write_f64(z.re);
            h.write_f64(z.im);
        }
    }
    format!("{:016x}", h.0)
}
