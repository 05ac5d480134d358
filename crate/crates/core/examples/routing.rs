//! One overloaded link: direct delivery versus randomized two-hop routing.

use symbreak::kmachine::{route, Engine, EngineConfig, Message};
use symbreak::Seed;

fn main() -> symbreak::Result<()> {
    let k = 16;
    let config = EngineConfig::new(k, 4)?;
    // machine 1 has 960 messages for machine 0
    let outboxes = || -> Vec<Vec<Message>> {
        let mut out = vec![Vec::new(); k];
        out[1] = (0..960).map(|i| Message::new(1, 0, vec![i])).collect();
        out
    };

    let mut direct = Engine::new(config.clone());
    direct.superstep(outboxes())?;
    println!("direct:  {} rounds", direct.metrics().rounds);

    let (inboxes, metrics) = route(outboxes(), config, Seed(3))?;
    println!(
        "routed:  {} rounds, {} link messages, max link load {}",
        metrics.rounds, metrics.total_messages, metrics.max_link_load_per_round
    );
    println!("machine 0 received {}", inboxes[0].len());
    Ok(())
}
