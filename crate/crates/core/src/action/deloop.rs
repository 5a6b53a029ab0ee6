use crate::equiv::{EquivData, Partition, Witness};
use crate::kernel::{Category, Functor, KernelError, MorId, MorphismFunction, ObjId, TwoCategory};

use super::{ActionError, GroupAction};

/// Longest chain length accepted by [`DeloopSlice::new`].
pub const MAX_CHAIN_LENGTH: usize = 6;

const WORD_LIMIT: usize = 1 << 20;

/// A 2-cell of a [`DeloopSlice`]: a word `src`, a word `tgt` and one group
/// element per letter, packed big-endian in base `|G|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeloopCell {
    pub src: MorId,
    pub tgt: MorId,
    pub labels: u64,
}

/// One-object 2-category whose 1-cells are words over the carrier `E` and
/// whose 2-cells `w ⇒ w'` are letterwise group elements with `gᵢ.wᵢ = w'ᵢ`.
///
/// Words are kept up to length `L + 1`. Longer composites collapse to a
/// single absorbing 1-cell named `overflow` carrying only its identity, so
/// the structure stays finite and lawful.
#[derive(Clone, Debug)]
pub struct DeloopSlice {
    action: GroupAction,
    max_len: usize,
    /// `offsets[l]` is the index of the first word of length `l`.
    offsets: Vec<usize>,
    powers_e: Vec<usize>,
    powers_g: Vec<u64>,
    letter_width: usize,
    label_width: usize,
    /// `transporter[x][y]`: least `g` with `g.x = y`.
    transporter: Vec<Vec<Option<usize>>>,
}

fn digits(n: usize) -> usize {
    n.saturating_sub(1).to_string().len()
}

impl DeloopSlice {
    /// The slice for chains of length at most `max_chain_length`.
    pub fn new(action: &GroupAction, max_chain_length: usize) -> Result<Self, ActionError> {
        if max_chain_length > MAX_CHAIN_LENGTH {
            return Err(ActionError::SliceTooLarge(format!(
                "chain length {max_chain_length} exceeds {MAX_CHAIN_LENGTH}"
            )));
        }
        let max_len = max_chain_length + 1;
        let e = action.carrier_len();
        let g = action.group().order() as u64;
        let mut powers_e = vec![1usize];
        let mut powers_g = vec![1u64];
        let mut offsets = vec![0usize];
        for l in 0..=max_len {
            let next = offsets[l].checked_add(powers_e[l]).filter(|&n| n <= WORD_LIMIT);
            let next = next.ok_or_else(|| {
                ActionError::SliceTooLarge(format!("more than {WORD_LIMIT} words"))
            })?;
            offsets.push(next);
            powers_e.push(powers_e[l].saturating_mul(e));
            let pg = powers_g[l].checked_mul(g).ok_or_else(|| {
                ActionError::SliceTooLarge("labels overflow 64 bits".into())
            })?;
            powers_g.push(pg);
        }
        Ok(DeloopSlice {
            action: action.clone(),
            max_len,
            offsets,
            powers_e,
            powers_g,
            letter_width: digits(e),
            label_width: digits(action.group().order()),
            transporter: (0..e)
                .map(|x| (0..e).map(|y| (0..action.group().order()).find(|&g| action.act(g, x) == y)).collect())
                .collect(),
        })
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// Longest word kept, `L + 1`.
    pub fn max_word_len(&self) -> usize {
        self.max_len
    }

    fn word_count(&self) -> usize {
        self.offsets[self.max_len + 1]
    }

    pub fn overflow(&self) -> MorId {
        MorId(self.word_count())
    }

    pub fn is_overflow(&self, f: MorId) -> bool {
        f.0 >= self.word_count()
    }

    fn len_of(&self, f: MorId) -> usize {
        self.offsets.partition_point(|&o| o <= f.0) - 1
    }

    fn code_of(&self, f: MorId) -> (usize, usize) {
        let len = self.len_of(f);
        (len, f.0 - self.offsets[len])
    }

    /// The 1-cell spelling `letters`, or `overflow` if it is too long.
    pub fn word(&self, letters: &[usize]) -> MorId {
        if letters.len() > self.max_len {
            return self.overflow();
        }
        let code = letters.iter().fold(0, |acc, &x| acc * self.action.carrier_len() + x);
        MorId(self.offsets[letters.len()] + code)
    }

    pub fn letter(&self, x: usize) -> MorId {
        self.word(&[x])
    }

    /// Letters of a word, `None` for `overflow`.
    pub fn letters(&self, f: MorId) -> Option<Vec<usize>> {
        if self.is_overflow(f) {
            return None;
        }
        let (len, code) = self.code_of(f);
        let e = self.action.carrier_len();
        Some((0..len).map(|i| (code / self.powers_e[len - 1 - i]) % e).collect())
    }

    /// Carrier names of a word joined by spaces.
    pub fn spell(&self, f: MorId) -> String {
        match self.letters(f) {
            None => "overflow".into(),
            Some(w) => w.iter().map(|&x| self.action.carrier()[x].as_str()).collect::<Vec<_>>().join(" "),
        }
    }

    pub fn labels(&self, alpha: DeloopCell) -> Vec<usize> {
        let len = if self.is_overflow(alpha.src) { 0 } else { self.len_of(alpha.src) };
        let g = self.powers_g[1];
        (0..len).map(|i| ((alpha.labels / self.powers_g[len - 1 - i]) % g) as usize).collect()
    }

    fn pack(&self, labels: &[usize]) -> u64 {
        let g = self.powers_g[1];
        labels.iter().fold(0, |acc, &x| acc * g + x as u64)
    }

    /// The 2-cell on `src` with the given labels.
    pub fn cell(&self, src: MorId, labels: &[usize]) -> Result<DeloopCell, KernelError> {
        let word = self.letters(src).ok_or_else(|| {
            KernelError::NotComposable("labelled cell on overflow".into())
        })?;
        let n = self.action.group().order();
        if labels.len() != word.len() || labels.iter().any(|&g| g >= n) {
            return Err(KernelError::Schema("labels do not match the word".into()));
        }
        let image: Vec<usize> = word.iter().zip(labels).map(|(&x, &g)| self.action.act(g, x)).collect();
        Ok(DeloopCell { src, tgt: self.word(&image), labels: self.pack(labels) })
    }

    fn overflow_cell(&self) -> DeloopCell {
        let z = self.overflow();
        DeloopCell { src: z, tgt: z, labels: 0 }
    }

    fn pad(&self, labels: Vec<usize>, before: usize, after: usize) -> Vec<usize> {
        let unit = self.action.group().unit();
        let mut out = vec![unit; before];
        out.extend(labels);
        out.extend(std::iter::repeat(unit).take(after));
        out
    }

    fn whisker_common(&self, k: MorId, alpha: DeloopCell, left: bool) -> Result<DeloopCell, KernelError> {
        let composite = if left { self.compose(k, alpha.src)? } else { self.compose(alpha.src, k)? };
        if self.is_overflow(composite) {
            return Ok(self.overflow_cell());
        }
        let k_len = self.len_of(k);
        let labels = self.labels(alpha);
        let padded = if left { self.pad(labels, k_len, 0) } else { self.pad(labels, 0, k_len) };
        self.cell(composite, &padded)
    }
}

impl Category for DeloopSlice {
    type Obj = ObjId;
    type Mor = MorId;

    fn objects(&self) -> Vec<ObjId> {
        vec![ObjId(0)]
    }

    fn morphisms(&self) -> Vec<MorId> {
        (0..=self.word_count()).map(MorId).collect()
    }

    fn dom(&self, _f: MorId) -> ObjId {
        ObjId(0)
    }

    fn cod(&self, _f: MorId) -> ObjId {
        ObjId(0)
    }

    fn identity(&self, _x: ObjId) -> MorId {
        MorId(0)
    }

    fn compose(&self, g: MorId, f: MorId) -> Result<MorId, KernelError> {
        if self.is_overflow(g) || self.is_overflow(f) {
            return Ok(self.overflow());
        }
        let (lg, cg) = self.code_of(g);
        let (lf, cf) = self.code_of(f);
        if lg + lf > self.max_len {
            return Ok(self.overflow());
        }
        Ok(MorId(self.offsets[lg + lf] + cg * self.powers_e[lf] + cf))
    }

    fn object_name(&self, _x: ObjId) -> String {
        "*".into()
    }

    fn morphism_name(&self, f: MorId) -> String {
        match self.letters(f) {
            None => "overflow".into(),
            Some(w) => {
                let body: Vec<String> =
                    w.iter().map(|x| format!("{x:0width$}", width = self.letter_width)).collect();
                format!("L{}:{}", w.len(), body.join("."))
            }
        }
    }

    fn hom(&self, _x: ObjId, _y: ObjId) -> Vec<MorId> {
        self.morphisms()
    }
}

impl TwoCategory for DeloopSlice {
    type Cell = DeloopCell;

    fn cells(&self) -> Vec<DeloopCell> {
        let mut out = Vec::new();
        for f in 0..self.word_count() {
            let src = MorId(f);
            let len = self.len_of(src);
            for code in 0..self.powers_g[len] {
                let alpha = DeloopCell { src, tgt: src, labels: code };
                let labels = self.labels(alpha);
                out.push(self.cell(src, &labels).expect("labels in range"));
            }
        }
        out.push(self.overflow_cell());
        out.sort();
        out
    }

    fn src(&self, alpha: DeloopCell) -> MorId {
        alpha.src
    }

    fn tgt(&self, alpha: DeloopCell) -> MorId {
        alpha.tgt
    }

    fn identity2(&self, f: MorId) -> DeloopCell {
        if self.is_overflow(f) {
            return self.overflow_cell();
        }
        let unit = self.action.group().unit();
        let labels = vec![unit; self.len_of(f)];
        DeloopCell { src: f, tgt: f, labels: self.pack(&labels) }
    }

    fn vcomp(&self, second: DeloopCell, first: DeloopCell) -> Result<DeloopCell, KernelError> {
        if first.tgt != second.src {
            return Err(KernelError::NotComposable(format!(
                "{} ∘v {}",
                self.cell_name(second),
                self.cell_name(first)
            )));
        }
        if self.is_overflow(first.src) {
            return Ok(self.overflow_cell());
        }
        let group = self.action.group();
        let labels: Vec<usize> = self
            .labels(second)
            .into_iter()
            .zip(self.labels(first))
            .map(|(b, a)| group.mul(b, a))
            .collect();
        self.cell(first.src, &labels)
    }

    fn whisker_left(&self, k: MorId, alpha: DeloopCell) -> Result<DeloopCell, KernelError> {
        self.whisker_common(k, alpha, true)
    }

    fn whisker_right(&self, alpha: DeloopCell, k: MorId) -> Result<DeloopCell, KernelError> {
        self.whisker_common(k, alpha, false)
    }

    fn cell_name(&self, alpha: DeloopCell) -> String {
        let labels: Vec<String> = self
            .labels(alpha)
            .iter()
            .map(|g| format!("{g:0width$}", width = self.label_width))
            .collect();
        format!(
            "{}=>{}|{}",
            self.morphism_name(alpha.src),
            self.morphism_name(alpha.tgt),
            labels.join(".")
        )
    }

    fn cells_between(&self, s: MorId, t: MorId) -> Vec<DeloopCell> {
        match (self.letters(s), self.letters(t)) {
            (None, None) => vec![self.overflow_cell()],
            (Some(sw), Some(tw)) if sw.len() == tw.len() => self
                .action
                .chain_two_cells(&sw, &tw)
                .into_iter()
                .map(|labels| DeloopCell { src: s, tgt: t, labels: self.pack(&labels) })
                .collect(),
            _ => Vec::new(),
        }
    }

    fn first_cell_between(&self, s: MorId, t: MorId) -> Option<DeloopCell> {
        match (self.letters(s), self.letters(t)) {
            (None, None) => Some(self.overflow_cell()),
            (Some(sw), Some(tw)) if sw.len() == tw.len() => {
                let labels: Option<Vec<usize>> = sw.iter().zip(&tw).map(|(&x, &y)| self.transporter[x][y]).collect();
                labels.map(|l| DeloopCell { src: s, tgt: t, labels: self.pack(&l) })
            }
            _ => None,
        }
    }
}

impl GroupAction {
    /// Label tuples `(g₁, …, gₙ)` with `gᵢ.srcᵢ = tgtᵢ`, in lexicographic
    /// order of element indices.
    pub fn chain_two_cells(&self, src: &[usize], tgt: &[usize]) -> Vec<Vec<usize>> {
        if src.len() != tgt.len() {
            return Vec::new();
        }
        let choices: Vec<Vec<usize>> = src
            .iter()
            .zip(tgt)
            .map(|(&x, &y)| (0..self.group().order()).filter(|&g| self.act(g, x) == y).collect())
            .collect();
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for options in choices {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |&g| {
                        let mut p = prefix.clone();
                        p.push(g);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

/// Morphism equivalence in a [`DeloopSlice`] with identity `σ`, `τ₁`, `τ₂`.
#[derive(Clone, Debug)]
pub struct DeloopedEquivalence {
    data: EquivData<DeloopSlice, DeloopSlice>,
}

impl DeloopedEquivalence {
    pub fn new(action: &GroupAction, max_chain_length: usize) -> Result<Self, ActionError> {
        let slice = DeloopSlice::new(action, max_chain_length)?;
        let data = EquivData::new(
            slice.clone(),
            slice.clone(),
            MorphismFunction::identity(&slice),
            Functor::identity(&slice),
            Functor::identity(&slice),
        )?;
        Ok(DeloopedEquivalence { data })
    }

    pub fn data(&self) -> &EquivData<DeloopSlice, DeloopSlice> {
        &self.data
    }

    pub fn slice(&self) -> &DeloopSlice {
        self.data.c()
    }

    /// Witness for the length-one chains `f` and `f̃`.
    pub fn equivalent(&self, f: usize, f_tilde: usize) -> Option<Witness<MorId, DeloopCell>> {
        let s = self.slice();
        self.data.are_equivalent(s.letter(f), s.letter(f_tilde))
    }

    /// Classes of length-one chains, as carrier indices.
    pub fn classes(&self) -> Partition<usize> {
        let s = self.slice();
        let letters: Vec<MorId> = (0..s.action().carrier_len()).map(|x| s.letter(x)).collect();
        self.data
            .equivalence_classes_of(&letters)
            .map(|m| s.letters(m).expect("letters are words")[0])
    }
}

/// Whether `f` and `f̃` are equivalent as length-one chains in the slice for
/// chains of length at most `max_chain_length`.
pub fn delooped_equivalent(
    action: &GroupAction,
    f: usize,
    f_tilde: usize,
    max_chain_length: usize,
) -> Result<bool, ActionError> {
    Ok(DeloopedEquivalence::new(action, max_chain_length)?.equivalent(f, f_tilde).is_some())
}
