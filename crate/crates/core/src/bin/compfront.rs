fn main() {
    std::process::exit(compfront::cli::dispatch(std::env::args_os()));
}
