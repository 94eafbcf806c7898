use super::{Channel, ClosedFormMap, FaidError, Symbol};

/// How a [`VnMap`] came to be.
#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// Given directly as a table.
    Lut,
    /// Materialized from a closed-form description.
    ClosedForm(ClosedFormMap),
}

/// Variable-node update map for column weight three, stored as the `N_s x N_s`
/// array `l[i][j] = Phi_v(-C, M_i, M_j)`.
///
/// The `+C` half is never stored; it follows from the symmetry
/// `Phi_v(+C, m1, m2) = -Phi_v(-C, -m1, -m2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VnMap {
    s: u8,
    table: Vec<Symbol>,
    kind: MapKind,
}

impl VnMap {
    /// Builds a map from a row-major `N_s x N_s` table in `M_1..M_{N_s}` order.
    pub fn from_table(s: u8, table: Vec<Symbol>) -> Result<Self, FaidError> {
        let n = 2 * s as usize + 1;
        if table.len() != n * n {
            return Err(FaidError::BadTable(format!(
                "a {n}-level map needs {} entries, got {}",
                n * n,
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|m| m.magnitude() > s) {
            return Err(FaidError::BadTable(format!(
                "entry {} is outside the {n}-level alphabet",
                bad.level()
            )));
        }
        Ok(Self {
            s,
            table,
            kind: MapKind::Lut,
        })
    }

    /// Convenience constructor from signed levels.
    pub fn from_levels(s: u8, levels: &[i8]) -> Result<Self, FaidError> {
        Self::from_table(s, levels.iter().copied().map(Symbol::new).collect())
    }

    /// Every entry equal to `value`.
    pub fn constant(s: u8, value: Symbol) -> Result<Self, FaidError> {
        let n = 2 * s as usize + 1;
        Self::from_table(s, vec![value; n * n])
    }

    pub(crate) fn with_kind(mut self, kind: MapKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn size(&self) -> usize {
        2 * self.s as usize + 1
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            MapKind::Lut => "lut",
            MapKind::ClosedForm(cf) if cf.is_linear_threshold() => "closed_form_lt",
            MapKind::ClosedForm(_) => "closed_form_nlt",
        }
    }

    /// The stored `-C` table, row-major.
    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    /// `Phi_v(-C, m1, m2)`.
    pub fn minus_entry(&self, m1: Symbol, m2: Symbol) -> Symbol {
        self.table[m1.index(self.s) * self.size() + m2.index(self.s)]
    }

    /// `Phi_v(y, m1, m2)` for column weight three.
    pub fn phi_v(&self, y: Channel, m1: Symbol, m2: Symbol) -> Symbol {
        match y {
            Channel::Minus => self.minus_entry(m1, m2),
            Channel::Plus => -self.minus_entry(-m1, -m2),
        }
    }

    /// Copy with `Phi_v(-C, m1, m2)` replaced, leaving `(m2, m1)` alone.
    pub fn with_entry(&self, m1: Symbol, m2: Symbol, value: Symbol) -> Result<Self, FaidError> {
        let mut table = self.table.clone();
        table[m1.index(self.s) * self.size() + m2.index(self.s)] = value;
        Self::from_table(self.s, table)
    }

    fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        let s = self.s as i8;
        (-s..=s).map(Symbol::new)
    }

    /// Symmetry property: the stored table is symmetric in its two arguments and
    /// the `+C` half is the negated, argument-negated `-C` half.
    pub fn validate_symmetry(&self) -> bool {
        let syms = self.symbols();
        syms.clone().all(|a| {
            syms.clone().all(|b| {
                self.minus_entry(a, b) == self.minus_entry(b, a)
                    && self.phi_v(Channel::Plus, a, b) == -self.phi_v(Channel::Minus, -a, -b)
            })
        })
    }

    /// Lexicographic ordering: `l[i][j]` is non-decreasing in `i` and in `j`.
    pub fn validate_lex_order(&self) -> bool {
        let n = self.size();
        let t = &self.table;
        (0..n).all(|i| {
            (0..n).all(|j| {
                (i + 1 == n || t[i * n + j] <= t[(i + 1) * n + j])
                    && (j + 1 == n || t[i * n + j] <= t[i * n + j + 1])
            })
        })
    }

    /// Both class-A properties.
    pub fn is_class_a(&self) -> bool {
        self.validate_symmetry() && self.validate_lex_order()
    }
}

/// Check-node update: product of the signs times the smallest magnitude.
///
/// A zero input contributes a `+` sign but forces the output to zero.
pub fn phi_c(msgs: &[Symbol]) -> Result<Symbol, FaidError> {
    let (&first, rest) = msgs.split_first().ok_or(FaidError::EmptyCheckInput)?;
    let mut negative = first.is_negative();
    let mut min = first.magnitude();
    for &m in rest {
        negative ^= m.is_negative();
        min = min.min(m.magnitude());
    }
    let level = min as i8;
    Ok(Symbol::new(if negative { -level } else { level }))
}
