//! Live sessions over WebSocket.
//!
//! Each connection owns one [`LiveSession`]. A single loop per connection
//! applies incoming messages in arrival order and, on every publish tick,
//! catches the physics up with wall-clock time at the simulation step before
//! sending one state message. Sessions share nothing.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::response::IntoResponse;
use axum::routing::get;
use axum::Router;
use coriolis_core::haptics::{CouplingParams, DeviceSpec};
use coriolis_core::protocol::{
    decode, decode_bytes, encode_server, error_reply, ClientMsg, LiveSession, ServerMsg,
};
use coriolis_core::scenario::{ScenarioConfig, ScenarioKind};
use tokio::net::TcpListener;
use tokio::time::{interval, Instant, MissedTickBehavior};
use tower_http::services::ServeDir;

use crate::{load_config, CliError, ServeArgs, SCENARIO_KEYS};

pub const DEFAULT_HOST: &str = "127.0.0.1";
pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_PUBLISH_HZ: f64 = 60.0;
/// Most physics steps run per publish; a stalled loop drops the backlog
/// rather than racing to catch up.
const MAX_BATCH: u64 = 250;

#[derive(Debug, Clone)]
pub struct ServeOptions {
    /// Starting scenario for every new connection.
    pub config: ScenarioConfig,
    pub spec: DeviceSpec,
    pub coupling: CouplingParams,
    pub publish_hz: f64,
    pub static_dir: Option<PathBuf>,
}

impl Default for ServeOptions {
    fn default() -> Self {
        Self {
            config: ScenarioConfig::ball(),
            spec: DeviceSpec::default(),
            coupling: CouplingParams::default(),
            publish_hz: DEFAULT_PUBLISH_HZ,
            static_dir: None,
        }
    }
}

impl ServeOptions {
    /// Options and bind address from flags, `$PORT` and the config file.
    pub fn from_args(args: &ServeArgs) -> Result<(Self, SocketAddr), CliError> {
        let file = load_config(args.config.as_ref())?;
        let mut keys = SCENARIO_KEYS.to_vec();
        keys.extend(["port", "host", "publish-hz", "static"]);
        file.check_keys(&keys)?;
        let config = args.scenario.resolve(&file, Some(ScenarioKind::Ball))?;
        let port = file.or(args.port, "port")?.unwrap_or(DEFAULT_PORT);
        let host = file
            .or(args.host.clone(), "host")?
            .unwrap_or_else(|| DEFAULT_HOST.to_string());
        let addr: SocketAddr = format!("{host}:{port}")
            .parse()
            .or_else(|_| format!("[{host}]:{port}").parse())
            .map_err(|_| CliError::Usage(format!("invalid listen address {host}:{port}")))?;
        let publish_hz = file
            .or(args.publish_hz, "publish-hz")?
            .unwrap_or(DEFAULT_PUBLISH_HZ);
        if !(publish_hz.is_finite() && publish_hz > 0.0 && publish_hz <= 1000.0) {
            return Err(CliError::Usage(format!(
                "--publish-hz must be in (0, 1000], got {publish_hz}"
            )));
        }
        let opts = Self {
            config,
            publish_hz,
            static_dir: file.or(args.static_dir.clone(), "static")?,
            ..Self::default()
        };
        // Fail at startup rather than on the first connection.
        LiveSession::new(opts.config.clone(), opts.spec, opts.coupling)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok((opts, addr))
    }
}

/// Routes: `/ws` for sessions, `/health`, and static assets if configured.
pub fn router(opts: ServeOptions) -> Router {
    let static_dir = opts.static_dir.clone();
    let app = Router::new()
        .route("/ws", get(upgrade))
        .route("/health", get(|| async { "ok" }))
        .with_state(Arc::new(opts));
    match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    }
}

/// Serve until the listener fails.
pub async fn serve(listener: TcpListener, opts: ServeOptions) -> std::io::Result<()> {
    axum::serve(listener, router(opts)).await
}

async fn upgrade(ws: WebSocketUpgrade, State(opts): State<Arc<ServeOptions>>) -> impl IntoResponse {
    ws.on_upgrade(move |socket| run_connection(socket, opts))
}

async fn send(socket: &mut WebSocket, text: String) -> bool {
    socket.send(Message::Text(text.into())).await.is_ok()
}

async fn run_connection(mut socket: WebSocket, opts: Arc<ServeOptions>) {
    let mut live = match LiveSession::new(opts.config.clone(), opts.spec, opts.coupling) {
        Ok(live) => live,
        Err(e) => {
            let _ = send(&mut socket, error_reply(&e)).await;
            return;
        }
    };
    let dt = opts.config.dt;
    let mut publish = interval(Duration::from_secs_f64(1.0 / opts.publish_hz));
    publish.set_missed_tick_behavior(MissedTickBehavior::Delay);
    let start = Instant::now();
    let mut done: u64 = 0;

    loop {
        tokio::select! {
            incoming = socket.recv() => {
                let result = match incoming {
                    Some(Ok(Message::Text(text))) => decode(text.as_str()),
                    Some(Ok(Message::Binary(bytes))) => decode_bytes(&bytes),
                    Some(Ok(Message::Ping(_) | Message::Pong(_))) => continue,
                    Some(Ok(Message::Close(_)) | Err(_)) | None => break,
                };
                if let Err(e) = result.and_then(|msg| live.apply(&msg)) {
                    if !send(&mut socket, error_reply(&e)).await {
                        break;
                    }
                }
            }
            _ = publish.tick() => {
                let due = (start.elapsed().as_secs_f64() / dt) as u64;
                // At least one step per publish, so no snapshot repeats.
                let batch = due.saturating_sub(done).clamp(1, MAX_BATCH);
                done = (done + batch).max(due.saturating_sub(MAX_BATCH));
                if let Err(e) = live.advance(batch) {
                    recover(&mut live);
                    if !send(&mut socket, error_reply(&e)).await {
                        break;
                    }
                }
                let msg = match live.publish() {
                    Ok(state) => encode_server(&ServerMsg::State(state)),
                    Err(e) => error_reply(&e),
                };
                if !send(&mut socket, msg).await {
                    break;
                }
            }
        }
    }
}

/// A step that fails leaves the body unusable (for example after numeric
/// overflow); start it over rather than stalling the stream.
fn recover(live: &mut LiveSession) {
    let _ = live.apply(&ClientMsg::Reset);
}
