use super::{Channel, FaidError, Symbol};

/// Default magnitude of the channel value for LUT-only decoders.
pub const DEFAULT_CHANNEL: f64 = 1.5;

/// Real-valued binding of a message alphabet with `N_s = 2s + 1` levels.
///
/// Table-defined maps never look at these numbers during message passing; they
/// only matter for the decision rule and for closed-form maps.
#[derive(Debug, Clone, PartialEq)]
pub struct MessageAlphabet {
    levels: Vec<f64>,
    thresholds: Vec<f64>,
    channel: f64,
}

impl MessageAlphabet {
    /// `levels` are `L_1 < ... < L_s`, `thresholds` are `T_1 < ... < T_s`
    /// (with `T_{s+1}` implicitly infinite) and `channel` is `C`.
    pub fn new(levels: Vec<f64>, thresholds: Vec<f64>, channel: f64) -> Result<Self, FaidError> {
        if levels.is_empty() || levels.len() > 60 {
            return Err(FaidError::BadAlphabet(format!(
                "need between 1 and 60 positive levels, got {}",
                levels.len()
            )));
        }
        if thresholds.len() != levels.len() {
            return Err(FaidError::BadAlphabet(format!(
                "{} levels but {} thresholds",
                levels.len(),
                thresholds.len()
            )));
        }
        for (name, seq) in [("level", &levels), ("threshold", &thresholds)] {
            if !seq.iter().all(|x| x.is_finite() && *x > 0.0) {
                return Err(FaidError::BadAlphabet(format!("{name} values must be positive")));
            }
            if seq.windows(2).any(|w| w[0] >= w[1]) {
                return Err(FaidError::BadAlphabet(format!(
                    "{name} values must be strictly increasing"
                )));
            }
        }
        if !(channel.is_finite() && channel > 0.0) {
            return Err(FaidError::BadAlphabet("C must be positive".into()));
        }
        Ok(Self {
            levels,
            thresholds,
            channel,
        })
    }

    /// `L_k = k`, `T_k = k`, `C = 1.5`.
    pub fn with_defaults(s: u8) -> Self {
        let levels: Vec<f64> = (1..=s).map(f64::from).collect();
        Self {
            thresholds: levels.clone(),
            levels,
            channel: DEFAULT_CHANNEL,
        }
    }

    /// Number of positive levels `s`.
    pub fn s(&self) -> u8 {
        self.levels.len() as u8
    }

    /// Alphabet size `N_s = 2s + 1`.
    pub fn size(&self) -> usize {
        2 * self.levels.len() + 1
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn channel_magnitude(&self) -> f64 {
        self.channel
    }

    pub fn channel_value(&self, y: Channel) -> f64 {
        match y {
            Channel::Plus => self.channel,
            Channel::Minus => -self.channel,
        }
    }

    pub fn value(&self, m: Symbol) -> f64 {
        match m.level() {
            0 => 0.0,
            k if k > 0 => self.levels[k as usize - 1],
            k => -self.levels[(-k) as usize - 1],
        }
    }

    /// All symbols in the order `M_1, ..., M_{N_s}`.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + Clone {
        let s = self.s() as i8;
        (-s..=s).map(Symbol::new)
    }

    pub fn contains(&self, m: Symbol) -> bool {
        m.magnitude() <= self.s()
    }

    /// The quantizer: `sgn(x) L_i` when `T_i <= |x| < T_{i+1}`, zero below `T_1`.
    pub fn quantize(&self, x: f64) -> Symbol {
        let mag = x.abs();
        let k = self.thresholds.iter().take_while(|&&t| t <= mag).count() as i8;
        if x < 0.0 {
            Symbol::new(-k)
        } else {
            Symbol::new(k)
        }
    }
}
