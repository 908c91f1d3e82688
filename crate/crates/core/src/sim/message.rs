use std::fmt;

/// `ceil(log2 x)`, with `ceil_log2(0) == ceil_log2(1) == 0`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Bits needed to write any value in `[0, bound)`; never less than one.
pub fn bits_for(bound: u64) -> u32 {
    ceil_log2(bound).max(1)
}

/// Encoding widths that follow from the clique size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wire {
    n: usize,
    id_bits: u32,
    budget_bits: u32,
}

impl Wire {
    pub fn new(n: usize, msg_constant: u32) -> Self {
        let id_bits = bits_for(n as u64);
        Wire {
            n,
            id_bits,
            budget_bits: msg_constant * id_bits,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Width of a vertex ID, `max(1, ceil(log2 n))`.
    pub fn id_bits(&self) -> u32 {
        self.id_bits
    }

    /// Per-message cap `B`.
    pub fn budget_bits(&self) -> u32 {
        self.budget_bits
    }

    pub fn value_bits(&self, bound: u64) -> u32 {
        bits_for(bound)
    }
}

/// A message with a well-defined encoded size.
pub trait Message: Clone + Send + Sync + fmt::Debug {
    fn bit_len(&self, wire: &Wire) -> u32;
}

/// An unsigned integer sent with a fixed width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    pub value: u64,
    pub bits: u32,
}

impl Word {
    pub fn new(value: u64, bits: u32) -> Self {
        debug_assert!(bits >= 64 || value < 1u64 << bits, "{value} does not fit {bits} bits");
        Word { value, bits }
    }

    /// One bit of payload, for pure signals.
    pub fn signal() -> Self {
        Word { value: 1, bits: 1 }
    }
}

impl Message for Word {
    fn bit_len(&self, _: &Wire) -> u32 {
        self.bits
    }
}

/// A raw bit string.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: Vec<u64>,
    len: u32,
}

impl Bits {
    pub fn zeros(len: u32) -> Self {
        Bits {
            words: vec![0; (len as usize).div_ceil(64)],
            len,
        }
    }

    /// The low `width` bits of `value`.
    pub fn from_value(value: u64, width: u32) -> Self {
        let mut b = Bits::zeros(width);
        for i in 0..width.min(64) {
            b.set(i, (value >> i) & 1 == 1);
        }
        b
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: u32) -> bool {
        assert!(i < self.len);
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: u32, bit: bool) {
        assert!(i < self.len);
        let w = &mut self.words[(i / 64) as usize];
        if bit {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len as usize == self.words.len() * 64 {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    /// Reads the first `min(len, 64)` bits back as an integer.
    pub fn to_value(&self) -> u64 {
        (0..self.len.min(64)).fold(0, |acc, i| acc | ((self.get(i) as u64) << i))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits[")?;
        for i in 0..self.len.min(80) {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        if self.len > 80 {
            write!(f, "...({} bits)", self.len)?;
        }
        write!(f, "]")
    }
}

impl FromIterator<bool> for Bits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut b = Bits::default();
        for bit in iter {
            b.push(bit);
        }
        b
    }
}

impl Message for Bits {
    fn bit_len(&self, _: &Wire) -> u32 {
        self.len
    }
}
