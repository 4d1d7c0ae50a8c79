LINES = [(0, 1, 2), (3, 4, 5), (6, 7, 8),
         (0, 3, 6), (1, 4, 7), (2, 5, 8),
         (0, 4, 8), (2, 4, 6)]


def winner(board):
    for a, b, c in LINES:
        if board[a] != " " and board[a] == board[b] == board[c]:
            return board[a]
    return None


def minimax(board, player):
    win = winner(board)
    if win is not None:
        return (1 if win == "X" else -1), None
    moves = [i for i, cell in enumerate(board) if cell == " "]
    if not moves:
        return 0, None
    best = None
    for move in moves:
        board[move] = player
        score, _ = minimax(board, "O" if player == "X" else "X")
        board[move] = " "
        if best is None or (player == "X" and score > best[0]) or (player == "O" and score < best[0]):
            best = (score, move)
    return best


def show(board):
    rows = ["|".join(board[r * 3:r * 3 + 3]) for r in range(3)]
    print("\n-+-+-\n".join(rows))


b = list("XO X O   ")
score, move = minimax(b, "X")
b[move] = "X"
show(b)
print("score", score)
