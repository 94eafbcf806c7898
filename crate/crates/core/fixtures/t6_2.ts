6 10
2 1 2
2 1 4
2 1 6
2 5 2
2 5 4
2 5 6
2 3 2
2 3 4
1 3
1 6
