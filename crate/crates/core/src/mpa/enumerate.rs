use super::term::{term_modal_depth, Term};
use crate::system::EventAlphabet;

/// All terms up to `max_depth` nesting, where a sum is a set of between one
/// and `max_width` distinct prefixes (sums are taken up to reordering and
/// duplicate summands). Sorted by depth, then size, then printed form.
pub fn enumerate(alphabet: &EventAlphabet, max_depth: usize, max_width: usize) -> Vec<Term> {
    let base = || vec![Term::nil(), Term::bot()];
    // terms of depth ≤ d, for the current d
    let mut level = base();
    for _ in 0..max_depth {
        let mut prefixes: Vec<Term> = Vec::new();
        for e in alphabet.names() {
            for t in &level {
                prefixes.push(Term::must(e, t.clone()));
                prefixes.push(Term::may(e, t.clone()));
            }
        }
        prefixes.sort_by_cached_key(|t| t.to_string());
        let mut next = base();
        let mut chosen: Vec<usize> = Vec::new();
        combos(&prefixes, 0, max_width, &mut chosen, &mut next);
        level = next;
    }
    level.sort_by_cached_key(|t| (term_modal_depth(t), t.size(), t.to_string()));
    level
}

fn combos(pool: &[Term], from: usize, room: usize, chosen: &mut Vec<usize>, out: &mut Vec<Term>) {
    if !chosen.is_empty() {
        let parts = chosen.iter().map(|&i| pool[i].clone());
        out.push(Term::sum_all(parts).expect("prefixes are valid summands"));
    }
    if room == 0 {
        return;
    }
    for i in from..pool.len() {
        chosen.push(i);
        combos(pool, i + 1, room - 1, chosen, out);
        chosen.pop();
    }
}
