use super::{Channel, FaidError, MapKind, MessageAlphabet, Symbol, VnMap};

/// Weight applied to the channel value inside `Q(m1 + m2 + w * y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Omega {
    /// `w = 1` everywhere: a linear-threshold map.
    One,
    /// `w = 0` when the two messages have opposite signs (a zero counts as
    /// non-negative) and `|m1| + |m2|` equals `magnitude_sum`, else `w = 1`.
    CancelOpposite { magnitude_sum: f64 },
}

/// A variable-node map given by real values, thresholds and a weight function.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormMap {
    alphabet: MessageAlphabet,
    omega: Omega,
}

const TOL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * a.abs().max(b.abs()).max(1.0)
}

fn violation(msg: impl Into<String>) -> FaidError {
    FaidError::ClosedFormConstraint(msg.into())
}

impl ClosedFormMap {
    pub fn new(alphabet: MessageAlphabet, omega: Omega) -> Self {
        Self { alphabet, omega }
    }

    /// The 5-level NLT map: `C = L1`, `L2 = 3 L1`, `T1 = L1`, `T2 = L2`, with
    /// the channel weight dropped when the messages are `-L2` and `+L2`.
    pub fn five_level_nlt(alphabet: MessageAlphabet) -> Result<Self, FaidError> {
        if alphabet.s() != 2 {
            return Err(violation("the 5-level map needs exactly two positive levels"));
        }
        let l = alphabet.levels();
        let t = alphabet.thresholds();
        let c = alphabet.channel_magnitude();
        if !close(c, l[0]) {
            return Err(violation(format!("C = {c} must equal L1 = {}", l[0])));
        }
        if !close(l[1], 3.0 * l[0]) {
            return Err(violation(format!("L2 = {} must equal 3 L1", l[1])));
        }
        if !close(t[0], l[0]) || !close(t[1], l[1]) {
            return Err(violation("thresholds must be T1 = L1, T2 = L2"));
        }
        let magnitude_sum = 2.0 * l[1];
        Ok(Self::new(alphabet, Omega::CancelOpposite { magnitude_sum }))
    }

    /// [`five_level_nlt`](Self::five_level_nlt) with every value derived from `L1`.
    pub fn five_level_nlt_from(l1: f64) -> Result<Self, FaidError> {
        let levels = vec![l1, 3.0 * l1];
        Self::five_level_nlt(MessageAlphabet::new(levels.clone(), levels, l1)?)
    }

    /// The 7-level LT map: `L1 < C < 2 L1`, `L2 = 2 L1`, `L3 = 2 L2 + C`,
    /// `T1 = L1`, `T2 = L2`, `T3 = L3 - C`.
    pub fn seven_level_lt(alphabet: MessageAlphabet) -> Result<Self, FaidError> {
        if alphabet.s() != 3 {
            return Err(violation("the 7-level map needs exactly three positive levels"));
        }
        let l = alphabet.levels();
        let t = alphabet.thresholds();
        let c = alphabet.channel_magnitude();
        if !(l[0] < c && c < 2.0 * l[0]) {
            return Err(violation(format!("need L1 < C < 2 L1, got L1 = {}, C = {c}", l[0])));
        }
        if !close(l[1], 2.0 * l[0]) {
            return Err(violation(format!("L2 = {} must equal 2 L1", l[1])));
        }
        if !close(l[2], 2.0 * l[1] + c) {
            return Err(violation(format!("L3 = {} must equal 2 L2 + C", l[2])));
        }
        if !close(t[0], l[0]) || !close(t[1], l[1]) || !close(t[2], l[2] - c) {
            return Err(violation("thresholds must be T1 = L1, T2 = L2, T3 = L3 - C"));
        }
        Ok(Self::new(alphabet, Omega::One))
    }

    /// [`seven_level_lt`](Self::seven_level_lt) with every value derived from `L1` and `C`.
    pub fn seven_level_lt_from(l1: f64, c: f64) -> Result<Self, FaidError> {
        let l2 = 2.0 * l1;
        let l3 = 2.0 * l2 + c;
        let alphabet = MessageAlphabet::new(vec![l1, l2, l3], vec![l1, l2, l3 - c], c)?;
        Self::seven_level_lt(alphabet)
    }

    pub fn alphabet(&self) -> &MessageAlphabet {
        &self.alphabet
    }

    pub fn omega(&self) -> Omega {
        self.omega
    }

    pub fn is_linear_threshold(&self) -> bool {
        matches!(self.omega, Omega::One)
    }

    fn weight(&self, m1: Symbol, m2: Symbol) -> f64 {
        match self.omega {
            Omega::One => 1.0,
            Omega::CancelOpposite { magnitude_sum } => {
                let a = &self.alphabet;
                let opposite = m1.is_negative() != m2.is_negative();
                let sum = a.value(m1).abs() + a.value(m2).abs();
                if opposite && close(sum, magnitude_sum) {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    /// `Q(m1 + m2 + w(m1, m2) * y)`.
    pub fn phi_v(&self, y: Channel, m1: Symbol, m2: Symbol) -> Symbol {
        let a = &self.alphabet;
        let x = a.value(m1) + a.value(m2) + self.weight(m1, m2) * a.channel_value(y);
        a.quantize(x)
    }

    /// Evaluates the map on every `-C` input to produce the equivalent table.
    pub fn materialize(&self) -> VnMap {
        let s = self.alphabet.s();
        let table = self
            .alphabet
            .symbols()
            .flat_map(|a| self.alphabet.symbols().map(move |b| (a, b)))
            .map(|(a, b)| self.phi_v(Channel::Minus, a, b))
            .collect();
        VnMap::from_table(s, table)
            .expect("quantizer output stays in the alphabet")
            .with_kind(MapKind::ClosedForm(self.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(k: i8) -> Symbol {
        Symbol::new(k)
    }

    #[test]
    fn five_level_examples() {
        let f = ClosedFormMap::five_level_nlt_from(1.0).unwrap();
        // opposite signs at full magnitude: weight 0, Q(0) = 0
        assert_eq!(f.phi_v(Channel::Minus, sym(-2), sym(2)), sym(0));
        // -L1 - L1 - C = -3 L1 = -L2
        assert_eq!(f.phi_v(Channel::Minus, sym(-1), sym(-1)), sym(-2));
        assert!(!f.is_linear_threshold());
        assert_eq!(f.materialize().kind_name(), "closed_form_nlt");
    }

    #[test]
    fn seven_level_examples() {
        let f = ClosedFormMap::seven_level_lt_from(1.0, 1.5).unwrap();
        assert_eq!(f.alphabet().levels(), &[1.0, 2.0, 5.5]);
        assert_eq!(f.alphabet().thresholds(), &[1.0, 2.0, 4.0]);
        assert_eq!(f.phi_v(Channel::Minus, sym(3), sym(3)), sym(3));
        assert_eq!(f.phi_v(Channel::Minus, sym(1), sym(1)), sym(0));
        assert_eq!(f.materialize().kind_name(), "closed_form_lt");
    }

    #[test]
    fn constraint_violations() {
        assert!(ClosedFormMap::seven_level_lt_from(1.0, 2.5).is_err());
        assert!(ClosedFormMap::seven_level_lt_from(1.0, 0.5).is_err());
        let bad = MessageAlphabet::new(vec![1.0, 2.0], vec![1.0, 2.0], 1.0).unwrap();
        assert!(ClosedFormMap::five_level_nlt(bad).is_err());
        let bad = MessageAlphabet::new(vec![1.0, 3.0], vec![1.0, 3.0], 2.0).unwrap();
        assert!(ClosedFormMap::five_level_nlt(bad).is_err());
        let three = MessageAlphabet::with_defaults(3);
        assert!(ClosedFormMap::five_level_nlt(three).is_err());
    }

    #[test]
    fn plus_half_follows_symmetry() {
        for f in [
            ClosedFormMap::five_level_nlt_from(1.0).unwrap(),
            ClosedFormMap::seven_level_lt_from(1.0, 1.5).unwrap(),
            ClosedFormMap::seven_level_lt_from(2.0, 3.9).unwrap(),
        ] {
            let lut = f.materialize();
            for a in f.alphabet().symbols() {
                for b in f.alphabet().symbols() {
                    assert_eq!(lut.phi_v(Channel::Plus, a, b), f.phi_v(Channel::Plus, a, b));
                }
            }
            assert!(lut.is_class_a());
        }
    }
}
