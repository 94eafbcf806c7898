use super::{Channel, FaidError, MessageAlphabet, Symbol, VnMap};
use crate::graph::{Code, LengthMismatch, TannerGraph};
use crate::{BitDecoder, DecodeError, DecodeOutcome};

/// Maximum iteration count used throughout the numerical comparisons.
pub const DEFAULT_MAX_ITERATIONS: usize = 100;

/// A column-weight-three FAID: alphabet binding, variable map, iteration cap.
/// The check map is always the min-sum rule.
#[derive(Debug, Clone)]
pub struct FaidDecoder {
    alphabet: MessageAlphabet,
    map: VnMap,
    max_iterations: usize,
    // flat lookup tables indexed by [channel][i * N_s + j]
    lut: [Vec<Symbol>; 2],
    values: Vec<f64>,
}

impl FaidDecoder {
    pub fn new(alphabet: MessageAlphabet, map: VnMap, max_iterations: usize) -> Result<Self, FaidError> {
        if alphabet.s() != map.s() {
            return Err(FaidError::AlphabetMismatch {
                alphabet: alphabet.size(),
                map: map.size(),
            });
        }
        if !map.validate_symmetry() {
            return Err(FaidError::NotClassA("symmetry"));
        }
        if !map.validate_lex_order() {
            return Err(FaidError::NotClassA("lexicographic ordering"));
        }
        if max_iterations == 0 {
            return Err(FaidError::ZeroIterations);
        }
        let syms: Vec<Symbol> = alphabet.symbols().collect();
        let build = |y| {
            syms.iter()
                .flat_map(|&a| syms.iter().map(move |&b| (a, b)))
                .map(|(a, b)| map.phi_v(y, a, b))
                .collect::<Vec<_>>()
        };
        let lut = [build(Channel::Plus), build(Channel::Minus)];
        let values = syms.iter().map(|&m| alphabet.value(m)).collect();
        Ok(Self {
            alphabet,
            map,
            max_iterations,
            lut,
            values,
        })
    }

    /// A table-defined decoder with the default value binding.
    pub fn from_map(map: VnMap, max_iterations: usize) -> Result<Self, FaidError> {
        Self::new(MessageAlphabet::with_defaults(map.s()), map, max_iterations)
    }

    pub fn alphabet(&self) -> &MessageAlphabet {
        &self.alphabet
    }

    pub fn map(&self) -> &VnMap {
        &self.map
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Result<Self, FaidError> {
        if max_iterations == 0 {
            return Err(FaidError::ZeroIterations);
        }
        self.max_iterations = max_iterations;
        Ok(self)
    }

    #[inline]
    pub(crate) fn phi_v(&self, y: Channel, m1: Symbol, m2: Symbol) -> Symbol {
        let s = self.map.s();
        let n = self.map.size();
        let table = match y {
            Channel::Plus => &self.lut[0],
            Channel::Minus => &self.lut[1],
        };
        table[m1.index(s) * n + m2.index(s)]
    }

    /// Decision rule over the full set of incoming messages.
    #[inline]
    pub(crate) fn decide(&self, y: Channel, incoming: [Symbol; 3]) -> u8 {
        let s = self.map.s();
        let sum: f64 = incoming.iter().map(|m| self.values[m.index(s)]).sum::<f64>()
            + self.alphabet.channel_value(y);
        decide_sum(sum, y)
    }

    /// Runs the flooding decoder on `received` (hard bits from the BSC).
    pub fn decode(&self, code: &Code, received: &[u8]) -> Result<DecodeOutcome, FaidError> {
        self.decode_graph(&code.graph, received)
    }

    pub fn decode_graph(&self, graph: &TannerGraph, received: &[u8]) -> Result<DecodeOutcome, FaidError> {
        let mut session = FaidSession::new(self, graph, received)?;
        if graph.is_codeword(received) {
            return Ok(DecodeOutcome {
                bits: received.to_vec(),
                converged: true,
                iterations: 1,
            });
        }
        for it in 1..=self.max_iterations {
            session.step();
            if graph.is_codeword(session.decisions()) {
                return Ok(DecodeOutcome {
                    bits: session.decisions().to_vec(),
                    converged: true,
                    iterations: it,
                });
            }
        }
        Ok(DecodeOutcome {
            bits: session.decisions().to_vec(),
            converged: false,
            iterations: self.max_iterations,
        })
    }
}

fn decide_sum(sum: f64, y: Channel) -> u8 {
    if sum > 0.0 {
        0
    } else if sum < 0.0 {
        1
    } else {
        y.bit()
    }
}

/// Decision for one variable node: sign of the incoming messages plus the
/// channel value. An exact tie keeps the received bit.
pub fn decide(alphabet: &MessageAlphabet, y: Channel, incoming: &[Symbol]) -> u8 {
    let sum: f64 = incoming.iter().map(|&m| alphabet.value(m)).sum::<f64>() + alphabet.channel_value(y);
    decide_sum(sum, y)
}

impl BitDecoder for FaidDecoder {
    fn name(&self) -> String {
        format!("faid-{}", self.map.size())
    }

    fn decode_word(&self, graph: &TannerGraph, received: &[u8]) -> Result<DecodeOutcome, DecodeError> {
        Ok(self.decode_graph(graph, received)?)
    }
}

/// Step-by-step message passing on a Tanner graph.
///
/// Each [`step`](Self::step) is one flooding iteration: variable update,
/// check update, then decisions. Check-to-variable messages start at zero.
/// Individual variable-to-check messages may be pinned to a constant, which
/// stands in for a part of the graph whose behavior is known in advance.
pub struct FaidSession<'a> {
    decoder: &'a FaidDecoder,
    channel: Vec<Channel>,
    // edge e belongs to variable e / 3
    edge_check: Vec<usize>,
    check_edges: Vec<Vec<usize>>,
    v2c: Vec<Symbol>,
    c2v: Vec<Symbol>,
    pins: Vec<Option<Symbol>>,
    decisions: Vec<u8>,
    iteration: usize,
}

impl<'a> FaidSession<'a> {
    pub fn new(decoder: &'a FaidDecoder, graph: &TannerGraph, received: &[u8]) -> Result<Self, FaidError> {
        if received.len() != graph.n_var() {
            return Err(FaidError::Length(LengthMismatch {
                expected: graph.n_var(),
                got: received.len(),
            }));
        }
        if let Some((var, degree)) = graph
            .var_degrees()
            .enumerate()
            .find(|&(_, d)| d != 3)
        {
            return Err(FaidError::NotColumnWeightThree { var, degree });
        }
        if let Some(check) = graph.chk_degrees().position(|d| d < 2) {
            return Err(FaidError::DegenerateCheck { check });
        }
        let n_edges = 3 * graph.n_var();
        let mut edge_check = Vec::with_capacity(n_edges);
        let mut check_edges = vec![Vec::new(); graph.n_chk()];
        for v in 0..graph.n_var() {
            for &c in graph.var_neighbors(v) {
                check_edges[c].push(edge_check.len());
                edge_check.push(c);
            }
        }
        Ok(Self {
            decoder,
            channel: received.iter().map(|&b| Channel::from_bit(b)).collect(),
            edge_check,
            check_edges,
            v2c: vec![Symbol::ZERO; n_edges],
            c2v: vec![Symbol::ZERO; n_edges],
            pins: vec![None; n_edges],
            decisions: received.to_vec(),
            iteration: 0,
        })
    }

    /// Forces the message from `var` to `check` to `value` in every iteration.
    pub fn pin(&mut self, var: usize, check: usize, value: Symbol) -> Result<(), FaidError> {
        let slot = (0..3)
            .map(|k| 3 * var + k)
            .find(|&e| self.edge_check.get(e) == Some(&check))
            .ok_or(FaidError::NoSuchEdge { var, check })?;
        self.pins[slot] = Some(value);
        Ok(())
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Hard decisions after the last completed iteration (the received word
    /// before the first one).
    pub fn decisions(&self) -> &[u8] {
        &self.decisions
    }

    pub fn check_to_var(&self) -> &[Symbol] {
        &self.c2v
    }

    pub fn step(&mut self) {
        let dec = self.decoder;
        for (v, &y) in self.channel.iter().enumerate() {
            let e = 3 * v;
            let [a, b, c] = [self.c2v[e], self.c2v[e + 1], self.c2v[e + 2]];
            self.v2c[e] = dec.phi_v(y, b, c);
            self.v2c[e + 1] = dec.phi_v(y, a, c);
            self.v2c[e + 2] = dec.phi_v(y, a, b);
        }
        for (slot, pin) in self.pins.iter().enumerate() {
            if let Some(p) = pin {
                self.v2c[slot] = *p;
            }
        }
        for edges in &self.check_edges {
            // Two smallest magnitudes and the overall sign parity give every
            // extrinsic output.
            let mut negative = false;
            let (mut min1, mut min2, mut arg) = (u8::MAX, u8::MAX, usize::MAX);
            for &e in edges {
                let m = self.v2c[e];
                negative ^= m.is_negative();
                let mag = m.magnitude();
                if mag < min1 {
                    min2 = min1;
                    min1 = mag;
                    arg = e;
                } else if mag < min2 {
                    min2 = mag;
                }
            }
            for &e in edges {
                let mag = if e == arg { min2 } else { min1 } as i8;
                let neg = negative ^ self.v2c[e].is_negative();
                self.c2v[e] = Symbol::new(if neg { -mag } else { mag });
            }
        }
        for (v, &y) in self.channel.iter().enumerate() {
            let e = 3 * v;
            self.decisions[v] = dec.decide(y, [self.c2v[e], self.c2v[e + 1], self.c2v[e + 2]]);
        }
        self.iteration += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faid::tables;

    #[test]
    fn decision_rule_examples() {
        let a = MessageAlphabet::with_defaults(3);
        let z = Symbol::ZERO;
        let l1 = Symbol::new(1);
        assert_eq!(decide(&a, Channel::Plus, &[z, z, z]), 0);
        assert_eq!(decide(&a, Channel::Minus, &[l1, l1, l1]), 0);
        assert_eq!(decide(&a, Channel::Minus, &[z, z, z]), 1);
        // exact tie: 1 + 0.5 - 1.5 = 0 keeps the received bit
        let a = MessageAlphabet::new(vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0], 1.0).unwrap();
        assert_eq!(decide(&a, Channel::Minus, &[l1, z, z]), 1);
        assert_eq!(decide(&a, Channel::Plus, &[-l1, z, z]), 0);
    }

    #[test]
    fn rejects_invalid_maps() {
        let t1 = tables::table_one();
        let broken = t1.with_entry(Symbol::new(-3), Symbol::new(3), Symbol::new(3)).unwrap();
        assert_eq!(
            FaidDecoder::from_map(broken, 10).unwrap_err(),
            FaidError::NotClassA("symmetry")
        );
        assert_eq!(
            FaidDecoder::new(MessageAlphabet::with_defaults(2), t1.clone(), 10).unwrap_err(),
            FaidError::AlphabetMismatch { alphabet: 5, map: 7 }
        );
        assert_eq!(FaidDecoder::from_map(t1, 0).unwrap_err(), FaidError::ZeroIterations);
    }

    #[test]
    fn rejects_irregular_graphs() {
        let dec = FaidDecoder::from_map(tables::table_one(), 10).unwrap();
        let g = TannerGraph::from_checks(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            dec.decode_graph(&g, &[0, 0, 0]),
            Err(FaidError::NotColumnWeightThree { var: 0, degree: 1 })
        ));
        let g = TannerGraph::from_checks(
            2,
            vec![vec![0, 1], vec![0, 1], vec![0], vec![1]],
        )
        .unwrap();
        assert!(matches!(
            dec.decode_graph(&g, &[0, 0]),
            Err(FaidError::DegenerateCheck { check: 2 })
        ));
        let g = TannerGraph::from_checks(2, vec![vec![0, 1], vec![0, 1], vec![0, 1]]).unwrap();
        assert!(matches!(dec.decode_graph(&g, &[0]), Err(FaidError::Length(_))));
    }
}
