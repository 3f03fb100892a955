use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use super::tokenize::{tokenize, TokenMode};
use crate::{Error, Result};

const MAGIC: &[u8; 5] = b"DPFM1";
/// Sentence-start marker; the tokenizer never emits an empty unit.
const BOS: &str = "";

/// Add-k smoothed n-gram model used by the perplexity filter.
///
/// Every predicted unit is conditioned on the longest available context of at
/// most `order − 1` units, with a sentence-start marker in front, so a text
/// shorter than the order falls back to lower-order contexts.
#[derive(Debug, Clone, PartialEq)]
pub struct NGramModel {
    order: usize,
    mode: TokenMode,
    k: f64,
    vocab_size: u64,
    grams: BTreeMap<Vec<String>, u64>,
    contexts: BTreeMap<Vec<String>, u64>,
}

/// Single-writer training phase; [`NGramModelBuilder::freeze`] produces the
/// immutable, shareable model.
#[derive(Debug, Clone)]
pub struct NGramModelBuilder {
    model: NGramModel,
    vocab: BTreeSet<String>,
    explicit_vocab: Option<u64>,
}

impl NGramModelBuilder {
    pub fn new(order: usize, mode: TokenMode, k: f64) -> Result<Self> {
        if order < 1 {
            return Err(Error::invalid("n-gram order must be >= 1"));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::invalid("smoothing constant k must be positive"));
        }
        Ok(Self {
            model: NGramModel {
                order,
                mode,
                k,
                vocab_size: 0,
                grams: BTreeMap::new(),
                contexts: BTreeMap::new(),
            },
            vocab: BTreeSet::new(),
            explicit_vocab: None,
        })
    }

    pub fn observe(&mut self, text: &str) -> &mut Self {
        let mut seq = vec![BOS];
        seq.extend(tokenize(text, self.model.mode));
        for i in 1..seq.len() {
            let ctx_len = (self.model.order - 1).min(i);
            let gram: Vec<String> = seq[i - ctx_len..=i].iter().map(|s| s.to_string()).collect();
            let ctx = gram[..ctx_len].to_vec();
            *self.model.grams.entry(gram).or_default() += 1;
            *self.model.contexts.entry(ctx).or_default() += 1;
            self.vocab.insert(seq[i].to_string());
        }
        self
    }

    /// Overrides the vocabulary size. Must cover every observed unit.
    pub fn vocab_size(&mut self, v: u64) -> &mut Self {
        self.explicit_vocab = Some(v);
        self
    }

    /// Seals the model. Without an explicit size, V is the number of distinct
    /// observed units plus one slot for unseen units.
    pub fn freeze(&self) -> Result<NGramModel> {
        let observed = self.vocab.len() as u64;
        let vocab_size = match self.explicit_vocab {
            Some(v) if v < observed => {
                return Err(Error::invalid(format!(
                    "vocabulary size {v} is smaller than the {observed} observed units"
                )))
            }
            Some(v) => v,
            None if observed == 0 => 0,
            None => observed + 1,
        };
        let mut model = self.model.clone();
        model.vocab_size = vocab_size;
        Ok(model)
    }
}

impl NGramModel {
    /// Trains and freezes a model over `texts` in one go.
    pub fn train<'a>(
        order: usize,
        mode: TokenMode,
        k: f64,
        texts: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let mut b = NGramModelBuilder::new(order, mode, k)?;
        for t in texts {
            b.observe(t);
        }
        b.freeze()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mode(&self) -> TokenMode {
        self.mode
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn vocab_size(&self) -> u64 {
        self.vocab_size
    }

    fn prob(&self, ctx: &[&str], unit: &str) -> f64 {
        let gram: Vec<String> = ctx.iter().copied().chain([unit]).map(str::to_string).collect();
        let c_gram = self.grams.get(&gram).copied().unwrap_or(0) as f64;
        let c_ctx = self.contexts.get(&gram[..ctx.len()]).copied().unwrap_or(0) as f64;
        (c_gram + self.k) / (c_ctx + self.k * self.vocab_size as f64)
    }

    /// `exp(−mean log p)` over the units of `text`. Empty text scores 1.
    pub fn perplexity(&self, text: &str) -> Result<f64> {
        if self.vocab_size == 0 {
            return Err(Error::InvalidState("perplexity: model is untrained (V = 0)".into()));
        }
        let mut seq = vec![BOS];
        seq.extend(tokenize(text, self.mode));
        let t = seq.len() - 1;
        if t == 0 {
            return Ok(1.0);
        }
        let mut log_sum = 0.0;
        for i in 1..seq.len() {
            let ctx_len = (self.order - 1).min(i);
            log_sum += self.prob(&seq[i - ctx_len..i], seq[i]).ln();
        }
        Ok((-log_sum / t as f64).exp())
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&[match self.mode {
            TokenMode::Char => 0,
            TokenMode::Word => 1,
        }])?;
        w.write_all(&(self.order as u32).to_le_bytes())?;
        w.write_all(&self.vocab_size.to_le_bytes())?;
        w.write_all(&self.k.to_le_bytes())?;
        for table in [&self.grams, &self.contexts] {
            w.write_all(&(table.len() as u64).to_le_bytes())?;
            for (units, count) in table {
                w.write_all(&(units.len() as u32).to_le_bytes())?;
                for u in units {
                    w.write_all(&(u.len() as u32).to_le_bytes())?;
                    w.write_all(u.as_bytes())?;
                }
                w.write_all(&count.to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        let mut magic = [0u8; 5];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format("not an n-gram model file (bad magic)".into()));
        }
        let mode = match read_array::<1>(&mut r)?[0] {
            0 => TokenMode::Char,
            1 => TokenMode::Word,
            m => return Err(Error::Format(format!("unknown token mode {m}"))),
        };
        let order = u32::from_le_bytes(read_array(&mut r)?) as usize;
        let vocab_size = u64::from_le_bytes(read_array(&mut r)?);
        let k = f64::from_le_bytes(read_array(&mut r)?);
        if order < 1 || !(k > 0.0 && k.is_finite()) {
            return Err(Error::Format("invalid model header".into()));
        }
        let mut tables = [BTreeMap::new(), BTreeMap::new()];
        for table in tables.iter_mut() {
            let len = u64::from_le_bytes(read_array(&mut r)?);
            for _ in 0..len {
                let n_units = u32::from_le_bytes(read_array(&mut r)?) as usize;
                if n_units > order {
                    return Err(Error::Format("gram longer than model order".into()));
                }
                let mut units = Vec::with_capacity(n_units);
                for _ in 0..n_units {
                    let n = u32::from_le_bytes(read_array(&mut r)?) as usize;
                    let mut buf = vec![0u8; n];
                    r.read_exact(&mut buf)?;
                    units.push(
                        String::from_utf8(buf)
                            .map_err(|_| Error::Format("unit is not UTF-8".into()))?,
                    );
                }
                let count = u64::from_le_bytes(read_array(&mut r)?);
                table.insert(units, count);
            }
        }
        let [grams, contexts] = tables;
        Ok(Self { order, mode, k, vocab_size, grams, contexts })
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::read_from(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

fn read_array<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}
