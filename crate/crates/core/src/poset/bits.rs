/// Square 0/1 matrix packed into 64-bit words, one row per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// `row(dst) |= row(src)`.
    pub fn or_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        for w in 0..self.words {
            let v = self.data[src * self.words + w];
            self.data[dst * self.words + w] |= v;
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in ones(self.row(i)) {
                t.set(j, i);
            }
        }
        t
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Indices of set bits, ascending.
pub fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

pub fn and_into(a: &[u64], b: &[u64], out: &mut Vec<u64>) {
    out.clear();
    out.extend(a.iter().zip(b).map(|(x, y)| x & y));
}

pub fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_and_iterate() {
        let mut m = BitMatrix::new(130);
        m.set(3, 0);
        m.set(3, 64);
        m.set(3, 129);
        assert!(m.get(3, 64) && !m.get(3, 65));
        assert_eq!(ones(m.row(3)).collect::<Vec<_>>(), vec![0, 64, 129]);
        let t = m.transpose();
        assert!(t.get(129, 3));
        assert_eq!(t.count_ones(), 3);
    }
}
