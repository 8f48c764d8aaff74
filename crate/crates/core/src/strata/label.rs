//! ⟨k⟩-stratum labels: subsets of `{1..k}`, the subset/ordered-partition
//! bijection `h(S)`, composition with separators, and the restriction
//! poset isomorphism.

/// Subset `S ⊆ {1..k}` marking a stratum of a ⟨k⟩-space. Bit `i-1`
/// represents the element `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumLabel {
    k: usize,
    bits: u32,
}

impl StratumLabel {
    pub fn new(k: usize, elements: &[usize]) -> Self {
        assert!(k <= 31, "labels support k ≤ 31");
        let mut bits = 0u32;
        for &e in elements {
            assert!(1 <= e && e <= k, "label element {} outside 1..={}", e, k);
            bits |= 1 << (e - 1);
        }
        StratumLabel { k, bits }
    }

    pub fn from_bits(k: usize, bits: u32) -> Self {
        assert!(k <= 31 && bits < (1u32 << k), "bits outside 2^[k]");
        StratumLabel { k, bits }
    }

    pub fn empty(k: usize) -> Self {
        StratumLabel { k, bits: 0 }
    }

    pub fn full(k: usize) -> Self {
        StratumLabel { k, bits: if k == 0 { 0 } else { (1u32 << k) - 1 } }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.k)
    }

    pub fn contains(&self, e: usize) -> bool {
        e >= 1 && e <= self.k && (self.bits >> (e - 1)) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.k, other.k);
        self.bits & !other.bits == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        (1..=self.k).filter(|&e| self.contains(e)).collect()
    }

    pub fn complement_elements(&self) -> Vec<usize> {
        (1..=self.k).filter(|&e| !self.contains(e)).collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        StratumLabel { k: self.k, bits: self.bits | other.bits }
    }

    pub fn with(&self, e: usize) -> Self {
        let mut s = *self;
        s.bits |= 1 << (e - 1);
        s
    }

    /// All subsets of `{1..k}`.
    pub fn all(k: usize) -> impl Iterator<Item = StratumLabel> {
        (0..(1u32 << k)).map(move |bits| StratumLabel { k, bits })
    }
}

impl std::fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "}}")
    }
}

/// Length sequence `h` of an ordered partition of `1..k+1`; entries are
/// positive and sum to `k+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LengthSeq(pub Vec<usize>);

impl LengthSeq {
    pub fn k(&self) -> usize {
        self.0.iter().sum::<usize>() - 1
    }
}

/// `h(S)`: with `{1..k}\S = {s'_1 < … < s'_j}`, the sequence
/// `(s'_1, s'_2 − s'_1, …, k+1 − s'_j)`; `(k+1)` when `S = {1..k}`.
pub fn h_of_s(label: &StratumLabel) -> LengthSeq {
    let k = label.k();
    let comp = label.complement_elements();
    let mut h = Vec::with_capacity(comp.len() + 1);
    let mut prev = 0usize;
    for s in &comp {
        h.push(s - prev);
        prev = *s;
    }
    h.push(k + 1 - prev);
    LengthSeq(h)
}

/// Inverse of [`h_of_s`]: the complement of `S(h)` consists of the proper
/// partial sums of `h`.
pub fn s_of_h(h: &LengthSeq) -> StratumLabel {
    assert!(!h.0.is_empty() && h.0.iter().all(|&x| x > 0), "length sequence entries must be positive");
    let k = h.k();
    let mut label = StratumLabel::full(k);
    let mut acc = 0usize;
    for &len in &h.0[..h.0.len() - 1] {
        acc += len;
        label.bits &= !(1 << (acc - 1));
    }
    label
}

/// `S(S_1, …, S_r) = S_1 ∪ {d_1} ∪ (S_2 + d_1) ∪ {d_1+d_2} ∪ …` where
/// `S_i ⊆ [d_i − 1]` and the result lives over `[d − 1]`, `d = Σ d_i`.
pub fn compose_labels(parts: &[StratumLabel]) -> StratumLabel {
    assert!(!parts.is_empty(), "composition needs at least one part");
    let total_d: usize = parts.iter().map(|p| p.k() + 1).sum();
    let mut out = StratumLabel::empty(total_d - 1);
    let mut offset = 0usize;
    for (idx, part) in parts.iter().enumerate() {
        for e in part.elements() {
            out = out.with(e + offset);
        }
        offset += part.k() + 1;
        if idx + 1 < parts.len() {
            out = out.with(offset); // separator at the partial sum
        }
    }
    out
}

/// The poset isomorphism `r_S: {T ⊇ S} → 2^{[k−|S|]}` determined by
/// `r_S(S ∪ {s'_j}) = {j}`, with `{1..k}\S = {s'_1 < …}`.
pub fn restriction_poset_iso(s: &StratumLabel) -> Vec<(StratumLabel, StratumLabel)> {
    let comp = s.complement_elements();
    let m = comp.len();
    let mut out = Vec::with_capacity(1 << m);
    for mask in 0u32..(1 << m) {
        let mut t = *s;
        let mut image = StratumLabel::empty(m);
        for (j, &e) in comp.iter().enumerate() {
            if (mask >> j) & 1 == 1 {
                t = t.with(e);
                image = image.with(j + 1);
            }
        }
        out.push((t, image));
    }
    out.sort_by_key(|(t, _)| t.bits());
    out
}

/// Image of a single `T ⊇ S` under `r_S`.
pub fn restriction_image(s: &StratumLabel, t: &StratumLabel) -> Option<StratumLabel> {
    if !s.is_subset_of(t) {
        return None;
    }
    let comp = s.complement_elements();
    let mut image = StratumLabel::empty(comp.len());
    for (j, &e) in comp.iter().enumerate() {
        if t.contains(e) {
            image = image.with(j + 1);
        }
    }
    Some(image)
}
