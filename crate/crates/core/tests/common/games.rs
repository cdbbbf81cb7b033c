use adsyn::synthesis::{Game, GamePair, Set};
use fixedbitset::FixedBitSet;
use rand::Rng;

pub fn random_game(rng: &mut impl Rng, max_nodes: usize, max_inputs: usize, pairs: usize) -> Game {
    let n = rng.gen_range(1..=max_nodes);
    let nu = rng.gen_range(1..=max_inputs);
    let mut succ = Vec::with_capacity(n * nu);
    for _ in 0..n * nu {
        let mut s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        if s.is_empty() {
            s.push(rng.gen_range(0..n));
        }
        succ.push(s);
    }
    let pairs = (0..pairs)
        .map(|_| {
            let mut fin = FixedBitSet::with_capacity(n);
            let mut inf = FixedBitSet::with_capacity(n);
            for v in 0..n {
                fin.set(v, rng.gen_bool(0.25));
                inf.set(v, rng.gen_bool(0.35));
            }
            GamePair { fin, inf }
        })
        .collect();
    Game::new(n, nu, succ, pairs)
}

/// Winning set by enumerating every memoryless strategy and every strongly
/// connected node subset of the induced graph.
pub fn brute_force_winning(g: &Game) -> Set {
    let n = g.node_count();
    let nu = g.input_count();
    assert!(n <= 12 && nu.pow(n as u32) <= 1 << 16, "oracle is exhaustive");
    let mut winning = FixedBitSet::with_capacity(n);
    let mut choice = vec![0usize; n];
    loop {
        // adjacency bitmasks under this strategy
        let adj: Vec<u32> = (0..n).map(|v| g.successors(v, choice[v]).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
        let bad: Vec<u32> = (1u32..1 << n).filter(|&c| strongly_connected(c, &adj) && !accepting(g, c)).collect();
        for v in 0..n {
            let reach = reachable(v, &adj);
            if !bad.iter().any(|&c| c & reach != 0) {
                winning.insert(v);
            }
        }
        // next strategy
        let mut k = 0;
        loop {
            if k == n {
                return winning;
            }
            choice[k] += 1;
            if choice[k] < nu {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn reachable(v: usize, adj: &[u32]) -> u32 {
    let mut seen = 1u32 << v;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for w in 0..adj.len() {
            if frontier >> w & 1 == 1 {
                next |= adj[w];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// `c` induces a strongly connected subgraph containing at least one edge.
fn strongly_connected(c: u32, adj: &[u32]) -> bool {
    let first = c.trailing_zeros() as usize;
    let inside = |m: u32| -> u32 {
        let mut seen = 0u32;
        let mut frontier = m;
        while frontier != 0 {
            seen |= frontier;
            let mut next = 0;
            for w in 0..adj.len() {
                if frontier >> w & 1 == 1 {
                    next |= adj[w] & c;
                }
            }
            frontier = next & !seen;
        }
        seen
    };
    // every node of c reaches `first` and is reached from it, via at least one step
    let mut from_first = 0;
    for w in 0..adj.len() {
        if c >> w & 1 == 1 {
            let r = inside(adj[w] & c);
            if r >> first & 1 == 0 {
                return false;
            }
            if w == first {
                from_first = r;
            }
        }
    }
    from_first & c == c
}

fn accepting(g: &Game, c: u32) -> bool {
    g.pairs().iter().any(|p| {
        let hits = |s: &Set| (0..g.node_count()).any(|v| c >> v & 1 == 1 && s.contains(v));
        !hits(&p.fin) && hits(&p.inf)
    })
}
