use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use caseframe_cli::commands::{self, Cli, Command};
use caseframe_cli::server::{self, ServiceConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Serve {
            base,
            port,
            lenient,
            cors_origins,
            ui_dir,
            session_ttl_hours,
        } => {
            let config = ServiceConfig {
                port: *port,
                base_file_path: base.clone(),
                lenient_parsing: *lenient,
                cors_origins: cors_origins.clone(),
                ui_dir: ui_dir.clone(),
                session_ttl: Duration::from_secs(session_ttl_hours * 3600),
            };
            let rt = match tokio::runtime::Runtime::new() {
                Ok(rt) => rt,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            };
            rt.block_on(server::serve(config)).map(|()| commands::Outcome::default())
        }
        cmd => commands::run(cmd),
    };
    match result {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            let _ = std::io::stderr().write_all(out.stderr.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
