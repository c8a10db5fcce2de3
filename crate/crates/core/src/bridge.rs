//! Bridges: integer walks `b(0..=σ)` from 0 with increments `≥ −1` and a
//! nonpositive endpoint, and their coding by `±1` words with `σ` entries
//! equal to `−1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct Bridge {
    values: Vec<i32>,
}

impl Bridge {
    pub fn new(values: Vec<i32>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidBridge("a bridge needs σ ≥ 1 steps".into()));
        }
        if values[0] != 0 {
            return Err(Error::InvalidBridge(format!("b(0) = {}", values[0])));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] - w[0] < -1) {
            return Err(Error::InvalidBridge(format!("step {i} goes down by more than one")));
        }
        let end = *values.last().unwrap();
        if end > 0 {
            return Err(Error::InvalidBridge(format!("endpoint b(σ) = {end} is positive")));
        }
        Ok(Self { values })
    }

    /// The bridge that stays at 0.
    pub fn zero(sigma: usize) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::NonPositive("σ"));
        }
        Ok(Self { values: vec![0; sigma + 1] })
    }

    pub fn sigma(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn get(&self, k: usize) -> i32 {
        self.values[k]
    }

    /// `b(σ)`.
    pub fn endpoint(&self) -> i32 {
        self.values[self.values.len() - 1]
    }

    /// `±1` word of length `2σ`: `−b(σ)` leading `+1`s, then for each step
    /// `k` a `−1` followed by `b(k) − b(k−1) + 1` copies of `+1`.
    pub fn to_pm1(&self) -> Vec<i8> {
        let mut out = Vec::with_capacity(2 * self.sigma());
        out.extend(std::iter::repeat_n(1i8, (-self.endpoint()) as usize));
        for w in self.values.windows(2) {
            out.push(-1);
            out.extend(std::iter::repeat_n(1i8, (w[1] - w[0] + 1) as usize));
        }
        out
    }

    /// Inverse of [`Self::to_pm1`].
    pub fn from_pm1(word: &[i8]) -> Result<Self> {
        if word.is_empty() || !word.len().is_multiple_of(2) {
            return Err(Error::InvalidBridge(format!("word length {} is not a positive even number", word.len())));
        }
        let sigma = word.len() / 2;
        let mut downs = 0;
        for &x in word {
            match x {
                -1 => downs += 1,
                1 => {}
                _ => return Err(Error::InvalidBridge(format!("entry {x} is not ±1"))),
            }
        }
        if downs != sigma {
            return Err(Error::InvalidBridge(format!("{downs} entries equal to −1, expected {sigma}")));
        }
        let lead = word.iter().take_while(|&&x| x == 1).count() as i32;
        let mut values = Vec::with_capacity(sigma + 1);
        values.push(0);
        let mut cur = 0i32;
        let mut run = 0i32;
        let mut started = false;
        for &x in &word[lead as usize..] {
            if x == -1 {
                if started {
                    cur += run - 1;
                    values.push(cur);
                }
                started = true;
                run = 0;
            } else {
                run += 1;
            }
        }
        cur += run - 1;
        values.push(cur);
        debug_assert_eq!(cur, -lead);
        Ok(Self { values })
    }
}

impl TryFrom<Vec<i32>> for Bridge {
    type Error = Error;

    fn try_from(values: Vec<i32>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Bridge> for Vec<i32> {
    fn from(b: Bridge) -> Self {
        b.values
    }
}
